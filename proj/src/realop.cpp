#include "modsub/realop.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace modsub {

double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

RealifiedSpace RealifiedSpace::standard(int n_complex) {
  if (n_complex <= 0) throw DimensionError("n_complex must be positive");
  const int n = n_complex;
  Mat i_op = Mat::Zero(2 * n, 2 * n);
  i_op.topRightCorner(n, n) = -Mat::Identity(n, n);
  i_op.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  return RealifiedSpace{n, std::move(i_op)};
}

RealifiedSpace RealifiedSpace::with_structure(Mat i_op) {
  const int d = static_cast<int>(i_op.rows());
  if (d == 0 || d % 2 != 0 || i_op.cols() != d)
    throw DimensionError("complex structure must be square of even dimension");
  const Mat id = Mat::Identity(d, d);
  if (!approx_zero(i_op * i_op + id, 1e-10))
    throw ConsistencyError("i^2 != -1");
  if (!approx_zero(i_op.transpose() * i_op - id, 1e-10))
    throw ConsistencyError("i is not orthogonal");
  return RealifiedSpace{d / 2, std::move(i_op)};
}

Mat real_adjoint(const Mat& t) { return t.transpose(); }

PolarDecomposition polar_decompose(const Mat& t) {
  if (t.rows() != t.cols()) throw DimensionError("polar decomposition needs a square operator");
  Eigen::JacobiSVD<Mat> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat u = svd.matrixU();
  const Mat w = svd.matrixV();
  PolarDecomposition pd;
  pd.v = u * w.transpose();
  pd.p = w * svd.singularValues().asDiagonal() * w.transpose();
  return pd;
}

double schatten_norm(const Mat& t, double p) {
  if (p < 1.0) throw std::invalid_argument("Schatten norm requires p >= 1");
  Eigen::JacobiSVD<Mat> svd(t);
  const Vec sv = svd.singularValues();
  double acc = 0.0;
  for (int i = 0; i < sv.size(); ++i) acc += std::pow(sv(i), p);
  return std::pow(acc, 1.0 / p);
}

bool is_complex_linear(const Mat& t, const RealifiedSpace& space, double tol) {
  return approx_zero(t * space.i_op - space.i_op * t, tol);
}

bool is_antilinear(const Mat& t, const RealifiedSpace& space, double tol) {
  return approx_zero(t * space.i_op + space.i_op * t, tol);
}

Mat borel_calculus_real(const Mat& k, const BorelFunction& f) {
  const int n = static_cast<int>(k.rows());
  if (k.cols() != n) throw DimensionError("borel_calculus_real needs a square operator");
  if (!approx_zero(k + k.transpose(), 1e-10 * (1.0 + k.norm())))
    throw ConsistencyError("borel_calculus_real: K is not skew-adjoint");

  // Hermitian promotion A = -i K on the complexification.
  CMat a = cplx(0.0, -1.0) * k.cast<cplx>();
  Eigen::SelfAdjointEigenSolver<CMat> es(a);
  if (es.info() != Eigen::Success)
    throw ConsistencyError("borel_calculus_real: eigendecomposition failed");
  const Vec& ev = es.eigenvalues();

  // f(-t) = conj(f(t)) on the spectrum; the spectrum of A is symmetric, so
  // checking at +/- of each eigenvalue covers the restriction-to-H condition.
  for (int i = 0; i < n; ++i) {
    const cplx fp = f(ev(i));
    const cplx fm = f(-ev(i));
    if (std::abs(fm - std::conj(fp)) > 1e-12 * (1.0 + std::abs(fp)))
      throw std::invalid_argument(
          "borel_calculus_real: f(-t) != conj(f(t)), result would leave H");
  }

  CVec fe(n);
  for (int i = 0; i < n; ++i) fe(i) = f(ev(i));
  CMat fa = es.eigenvectors() * fe.asDiagonal() *
            es.eigenvectors().adjoint();
  const double imag_leak = fa.imag().cwiseAbs().maxCoeff();
  const double scale = 1.0 + fa.real().cwiseAbs().maxCoeff();
  if (imag_leak > 1e-10 * scale)
    throw ConsistencyError("borel_calculus_real: imaginary leakage " +
                           std::to_string(imag_leak));
  return fa.real();
}

Mat sym_function(const Mat& s, const std::function<double(double)>& f) {
  if (s.rows() != s.cols()) throw DimensionError("sym_function needs a square operator");
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  if (es.info() != Eigen::Success)
    throw ConsistencyError("sym_function: eigendecomposition failed");
  Vec fe = es.eigenvalues();
  for (int i = 0; i < fe.size(); ++i) fe(i) = f(fe(i));
  return es.eigenvectors() * fe.asDiagonal() * es.eigenvectors().transpose();
}

Mat sqrtm_psd(const Mat& s) {
  return sym_function(s, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

}  // namespace modsub
