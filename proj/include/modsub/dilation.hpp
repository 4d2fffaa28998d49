#pragma once

#include "modsub/stdspace.hpp"

namespace modsub {

// Abstract standard subspace: a Gram pair (A, B) on R^n with A the real
// scalar product alpha and B the symplectic form beta, compatible in the
// sense beta(h,k)^2 <= alpha(h,h) alpha(k,k). The polariser is kept in the
// alpha-orthonormal frame, where skewness and ||D|| <= 1 are exact
// properties of a single array.
struct AbstractSubspace {
  int n = 0;
  Mat a;           // symmetric positive-definite
  Mat b;           // antisymmetric
  Mat a_sqrt;      // A^{1/2}
  Mat a_inv_sqrt;  // A^{-1/2}
  Mat d;           // polariser A^{-1/2} B A^{-1/2}, skew, ||D|| <= 1
  bool separating = false;  // ker(D^2 + 1) = {0}
  bool factorial = false;   // ker(D) = {0}

  double alpha(const Vec& h, const Vec& k) const { return h.dot(a * k); }
  double beta(const Vec& h, const Vec& k) const { return h.dot(b * k); }
};

AbstractSubspace abstract_subspace(const Mat& a, const Mat& b);

// A 2-dimensional abstract subspace with A = I, B = [[0, b],[-b, 0]].
AbstractSubspace two_dim_example(double b);

// One-particle structure over an abstract subspace: an ambient realified
// space, the embedded standard subspace, and the embedding kappa with
// Re(kappa h, kappa k) = alpha(h,k) and Im(kappa h, kappa k) = beta(h,k).
struct OneParticleStructure {
  RealifiedSpace space;
  StandardSubspace subspace;
  Mat kappa;  // 2n x n, input coordinates -> ambient coordinates
  IdentityReport report;
};

// Doubling H (+) H with the complex structure built from (D, V sqrt(1+D^2));
// the totally degenerate directions are dilated by the plain
// complexification. Requires a separating input (ker(1+D^2) = {0}),
// otherwise the embedded subspace fails to be cyclic.
OneParticleStructure orthogonal_dilation(const AbstractSubspace& abs);

// Doubling (H (+) H, beta (+) -beta) with the complex structure built from
// (D^{-1}, D^{-1} sqrt(1+D^2)) and alpha-hat derived from beta-hat. Requires
// a factorial input (D invertible).
OneParticleStructure symplectic_dilation(const AbstractSubspace& abs);

// The canonical unitary kappa_1(h) -> kappa_2(h), extended complex-linearly.
// Unitary, intertwines the complex structures and the modular operators.
Mat one_particle_unitary(const OneParticleStructure& k1,
                         const OneParticleStructure& k2);

// Samplers: conditioned spectra (singular values of D inside
// [sigma_min, sigma_max]) guarantee factorial, separating inputs.
AbstractSubspace sample_abstract_subspace(int n, Rng& rng,
                                          double sigma_min = 0.2,
                                          double sigma_max = 0.9);

// Random factorial standard subspace: orthogonal dilation of a sampled
// abstract subspace, conjugated by a random ambient rotation.
StandardSubspace sample_factorial_subspace(int n_complex, Rng& rng);

}  // namespace modsub
