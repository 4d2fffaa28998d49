#pragma once

#include "modsub/realop.hpp"
#include "modsub/report.hpp"

namespace modsub {

// A standard subspace H of a realified complex space, held by an
// alpha-orthonormal basis. At finite dimension standardness forces
// dim_R H = N (half the real dimension of the ambient space).
struct StandardSubspace {
  RealifiedSpace ambient;
  Mat basis;  // 2N x N, alpha-orthonormal columns
  bool cyclic = false;
  bool separating = false;
  bool factorial = false;

  int n() const { return static_cast<int>(basis.cols()); }

  // Orthogonal projection onto H from the basis Gram construction.
  Mat e_gram() const { return basis * basis.transpose(); }

  // Polariser D = -E_H i|_H in basis coordinates (N x N, skew).
  Mat polariser() const {
    return -basis.transpose() * ambient.i_op * basis;
  }

  // Restriction T|_H of an ambient operator that maps H into H.
  Mat restrict(const Mat& ambient_op) const {
    return basis.transpose() * ambient_op * basis;
  }
};

// Validates cyclicity and separation via rank checks and orthonormalizes the
// basis. Throws NotStandardError with the failing rank when rejected.
StandardSubspace standard_subspace_from_basis(const RealifiedSpace& ambient,
                                              const Mat& vectors);

// The real subspace R^N in C^N (iH = H^perp). Delta = 1, J = S.
StandardSubspace real_line_subspace(int n_complex);

struct ModularData {
  Mat s;      // Tomita operator, antilinear involution
  Mat delta;  // S*S, complex-linear positive
  Mat j;      // modular conjugation, antiunitary involution
  Mat l;      // log Delta, the modular Hamiltonian

  // f(Delta) via spectral calculus; commutes with i since Delta does.
  Mat delta_function(const std::function<double(double)>& f) const {
    return sym_function(delta, f);
  }
};

ModularData modular_data(const StandardSubspace& h);

// Orthogonal projection onto H, built from the basis Gram construction and
// cross-checked against E = (1+Delta)^{-1} + J Delta^{1/2} (1+Delta)^{-1}.
Mat projection_E(const StandardSubspace& h);
Mat projection_E(const StandardSubspace& h, const ModularData& md);

// Cutting projection h + h' -> h on H + H'. Requires a factorial subspace;
// eigenvalues of Delta inside the guard band around 1 raise SingularityError.
// Cross-checks (1-Delta)^{-1} + J Delta^{1/2}(1-Delta)^{-1} and
// -E coth(L/2) against the direct basis decomposition.
inline constexpr double kDeltaGuardBand = 1e-8;
Mat cutting_P(const StandardSubspace& h);
Mat cutting_P(const StandardSubspace& h, const ModularData& md);

struct EmbeddedPolariser {
  Mat d;  // N x N, skew, in basis coordinates
  double trace_one_plus_d2 = 0.0;  // type-I diagnostic
  IdentityReport report;
};

// D_H together with the identity suite tying it to the modular data:
// D = i tanh(L/2)|_H, D^{-1} = P i|_H = -i coth(L/2)|_H,
// sqrt(1+D^2) = 1/cosh(L/2)|_H, D^{-1} sqrt(1+D^2) = -i/sinh(L/2)|_H,
// E_H E_{H'}|_H = 1 + D^2 and E_H E_{H'}|_H + E_H E_{iH}|_H = 1.
EmbeddedPolariser polariser_embedded(const StandardSubspace& h,
                                     double tol = kDefaultTol);

struct SymplecticBlocks {
  Mat c11, c12, c21, c22;  // P_H C|_H, P_H C|_{H'}, ... in (B, JB) coordinates
  IdentityReport report;   // block forms of i, E_H, E_{H perp}, E_{H'}, P'i
};

// Symplectic matrix decomposition of an ambient operator C over H (+) H',
// with the stated block forms verified against their closed-form expressions
// in D and J.
SymplecticBlocks symplectic_blocks(const Mat& c, const StandardSubspace& h,
                                   double tol = kDefaultTol);

}  // namespace modsub
