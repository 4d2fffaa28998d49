#pragma once

#include <functional>

#include "modsub/common.hpp"

namespace modsub {

// A complex space C^N modelled as R^{2N} with an explicit complex-structure
// operator i. The real inner product is the standard Euclidean one and stands
// for alpha = Re(.,.); the symplectic form is beta(x,y) = -alpha(x, i y),
// so that the polariser relation D = -E i|_H holds.
struct RealifiedSpace {
  int n_complex = 0;
  Mat i_op;  // 2N x 2N, i^2 = -1, orthogonal

  int real_dim() const { return 2 * n_complex; }

  // C^N in block coordinates (x, y) <-> x + iy.
  static RealifiedSpace standard(int n_complex);

  // Any orthogonal i with i^2 = -1. Validates both properties.
  static RealifiedSpace with_structure(Mat i_op);

  double beta(const Vec& x, const Vec& y) const { return -x.dot(i_op * y); }
};

// Adjoint w.r.t. alpha: entry-wise transpose in the orthonormal model.
Mat real_adjoint(const Mat& t);

struct PolarDecomposition {
  Mat v;  // isometric factor (orthogonal when ker T = 0)
  Mat p;  // (T*T)^{1/2}, symmetric PSD
};
PolarDecomposition polar_decompose(const Mat& t);

double schatten_norm(const Mat& t, double p);

inline Mat commutator_with_i(const Mat& t, const Mat& i_op) {
  return t * i_op - i_op * t;
}
inline Mat commutator_with_i(const Mat& t, const RealifiedSpace& space) {
  return commutator_with_i(t, space.i_op);
}

// Predicates: complex-linear <=> [T,i] = 0, antilinear <=> {T,i} = 0.
bool is_complex_linear(const Mat& t, const RealifiedSpace& space,
                       double tol = 1e-10);
bool is_antilinear(const Mat& t, const RealifiedSpace& space,
                   double tol = 1e-10);

using BorelFunction = std::function<cplx(double)>;

// Borel functional calculus for a skew-adjoint K on a real space, routed
// through the complexification H_C = H (+) H: with A the self-adjoint
// promotion of K (a Hermitian matrix -iK in the complex model), returns
// f(A) restricted back to H. Requires f(-t) = conj(f(t)), which is exactly
// the condition for the result to map H into H; violations are rejected.
Mat borel_calculus_real(const Mat& k, const BorelFunction& f);

// Symmetric spectral calculus helpers (restrictions of the above used for
// complex-linear operators such as Delta and L on the ambient space).
Mat sym_function(const Mat& s, const std::function<double(double)>& f);
Mat sqrtm_psd(const Mat& s);

}  // namespace modsub
