#pragma once

#include "modsub/stdspace.hpp"

namespace modsub {

// Symplectic maps are N x N real matrices in the alpha-orthonormal basis
// coordinates of the source/target subspaces. T symplectic <=> T* D2 T = D1.

struct SymplecticCheck {
  bool symplectic = false;
  double residual = 0.0;          // ||T* D2 T - D1||
  double inverse_residual = 0.0;  // ||T* D2 - D1 T^{-1}||
};

SymplecticCheck check_symplectic(const Mat& t, const StandardSubspace& h1,
                                 const StandardSubspace& h2,
                                 double tol = 1e-10);

// T-tilde = T P_{H1} + J2 T J1 (1 - P_{H1}) as an operator between the
// ambient spaces; symplectic whenever T is.
Mat extend_tilde(const Mat& t, const StandardSubspace& h1,
                 const StandardSubspace& h2);

// T-hat = T P_H + (1 - P_H): acts as T on H and trivially on H'.
Mat extend_hat(const Mat& t, const StandardSubspace& h);

// Delta^{is}|_H in basis coordinates (a symplectic bijection of H).
Mat modular_flow_restricted(const StandardSubspace& h, const ModularData& md,
                            double s);

struct ShaleDefect {
  double hs_defect = 0.0;          // ||T*T - 1||_2
  double comm_defect = 0.0;        // ||[T,i]||_2
  double identity_residual = 0.0;  // ||[T,i] - T i (1 - T*T)||
};

// Shale quantities of an ambient symplectic map T: space1 -> space2
// ([T,i] = T i1 - i2 T in the two-space case).
ShaleDefect shale_defect(const Mat& t_ambient, const RealifiedSpace& space1,
                         const RealifiedSpace& space2);
inline ShaleDefect shale_defect(const Mat& t_ambient,
                                const RealifiedSpace& space) {
  return shale_defect(t_ambient, space, space);
}

// The four compressions of [T-tilde, i] for a symplectic bijection T of a
// factorial H, computed both directly and from the closed forms
//   E_H [T~,i]|_H      = [T,D^{-1}] - sqrt(1+D^2) [T, D^{-1} sqrt(1+D^2)]
//   E_H [T~,i] i|_{H'} = D [T, D^{-1} sqrt(1+D^2)] J
//   E_{H'} i [T~,i]|_H = -J D [T, D^{-1} sqrt(1+D^2)]
//   E_{H'} [T~,i]|_{H'} = J (sqrt(1+D^2)[T, D^{-1} sqrt(1+D^2)] - [T,D^{-1}]) J
struct TildeBlocks {
  Mat e1, e2, e3, e4;   // closed forms, basis coordinates
  double cond_a = 0.0;  // ||e1||_2, condition a)
  double cond_b = 0.0;  // ||D [T, D^{-1} sqrt(1+D^2)]||_2, condition b)
  double hs_comm = 0.0;  // ||[T~, i]||_2
  IdentityReport report;
};

TildeBlocks tilde_commutator_blocks(const Mat& t, const StandardSubspace& h,
                                    double tol = 1e-8);

// Two-space implementability conditions of a symplectic bijection H1 -> H2:
//   a) (T D1^{-1} - D2^{-1} T) - sqrt(1+D2^2)(T D1^{-1} sqrt(1+D1^2)
//                                            - D2^{-1} sqrt(1+D2^2) T)
//   b) D2 (T D1^{-1} sqrt(1+D1^2) - D2^{-1} sqrt(1+D2^2) T)
// verified against the compressions of [T-tilde, i] across the spaces.
struct ImplementabilityConditions {
  double cond_a = 0.0;
  double cond_b = 0.0;
  IdentityReport report;
};

ImplementabilityConditions implementability_conditions(
    const Mat& t, const StandardSubspace& h1, const StandardSubspace& h2,
    double tol = 1e-8);

// Weak-innerness blocks for T = 1 + X, T-hat = T (+) 1:
//   X D^{-1} + D X,   D X D^{-1} sqrt(1+D^2),
//   sqrt(1+D^2) X,    sqrt(1+D^2) X D^{-1} sqrt(1+D^2),
// verified against direct compressions of [T-hat, i]. All four are finite at
// finite dimension; the norms are reported for scaling studies.
struct InnernessBlocks {
  Mat b1, b2, b3, b4;
  double norms[4] = {0.0, 0.0, 0.0, 0.0};
  bool all_finite = true;
  IdentityReport report;
};

InnernessBlocks innerness_blocks(const Mat& x, const StandardSubspace& h,
                                 double tol = 1e-8);

// A canonical symplectic bijection H1 -> H2 built from the skew canonical
// forms of the two polarisers (T* D2 T = D1 by construction).
Mat canonical_symplectic_map(const StandardSubspace& h1,
                             const StandardSubspace& h2);

// A squeeze diag(s, 1/s, s, 1/s, ...) in the canonical frame of D, mapped
// back to basis coordinates; symplectic for every s > 0.
Mat squeeze_map(const StandardSubspace& h, double s);

}  // namespace modsub
