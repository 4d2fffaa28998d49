#include "modsub/dilation.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace modsub {

namespace {

constexpr double kKernelCut = 1e-12;  // singular values of D below -> ker D

Mat random_orthogonal(int n, Rng& rng) {
  const Mat g = rng.matrix(n, n);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  const Mat r = qr.matrixQR().topRows(n);
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace

AbstractSubspace abstract_subspace(const Mat& a, const Mat& b) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || b.rows() != n || b.cols() != n)
    throw DimensionError("Gram matrices must be square and of equal size");
  if (!approx_zero(a - a.transpose(), 1e-12 * (1.0 + a.norm())))
    throw std::invalid_argument("alpha Gram matrix is not symmetric");
  if (!approx_zero(b + b.transpose(), 1e-12 * (1.0 + b.norm())))
    throw std::invalid_argument("beta Gram matrix is not antisymmetric");

  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("alpha Gram matrix is not positive-definite");

  AbstractSubspace abs;
  abs.n = n;
  abs.a = a;
  abs.b = b;
  Vec sqrt_ev = es.eigenvalues().cwiseSqrt();
  abs.a_sqrt = es.eigenvectors() * sqrt_ev.asDiagonal() *
               es.eigenvectors().transpose();
  abs.a_inv_sqrt = es.eigenvectors() * sqrt_ev.cwiseInverse().asDiagonal() *
                   es.eigenvectors().transpose();
  Mat d = abs.a_inv_sqrt * b * abs.a_inv_sqrt;
  abs.d = 0.5 * (d - d.transpose());

  Eigen::JacobiSVD<Mat> svd(abs.d);
  const Vec sv = svd.singularValues();
  const double d_norm = sv.size() ? sv(0) : 0.0;
  if (d_norm > 1.0 + 1e-12)
    throw std::invalid_argument(
        "beta is not compatible with alpha: ||D||_alpha = " +
        std::to_string(d_norm));
  abs.separating = (1.0 - d_norm) > 1e-12;
  abs.factorial = n == 0 || sv(sv.size() - 1) > kKernelCut;
  return abs;
}

AbstractSubspace two_dim_example(double b) {
  Mat beta(2, 2);
  beta << 0.0, b, -b, 0.0;
  return abstract_subspace(Mat::Identity(2, 2), beta);
}

namespace {

OneParticleStructure assemble_structure(const AbstractSubspace& abs, Mat i_op,
                                        Mat kappa) {
  const int n = abs.n;
  OneParticleStructure ops;
  ops.space = RealifiedSpace::with_structure(std::move(i_op));
  ops.kappa = std::move(kappa);

  ops.report.add("i^2 = -1",
                 (ops.space.i_op * ops.space.i_op +
                  Mat::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff(),
                 1e-12);
  ops.report.add("Re(kappa h, kappa k) = alpha(h,k)",
                 (ops.kappa.transpose() * ops.kappa - abs.a)
                     .cwiseAbs()
                     .maxCoeff(),
                 1e-10);
  ops.report.add("Im(kappa h, kappa k) = beta(h,k)",
                 (-ops.kappa.transpose() * ops.space.i_op * ops.kappa - abs.b)
                     .cwiseAbs()
                     .maxCoeff(),
                 1e-10);

  Mat span(2 * n, 2 * n);
  span.leftCols(n) = ops.kappa;
  span.rightCols(n) = ops.space.i_op * ops.kappa;
  Eigen::JacobiSVD<Mat> svd(span);
  const Vec sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * std::max(1.0, sv(0))) ++rank;
  ops.report.add("kappa(H) + i kappa(H) spans (rank deficit)",
                 static_cast<double>(2 * n - rank), 0.5);

  ops.subspace = standard_subspace_from_basis(
      ops.space, ops.kappa * abs.a_inv_sqrt);  // orthonormal image of H
  return ops;
}

}  // namespace

OneParticleStructure orthogonal_dilation(const AbstractSubspace& abs) {
  if (!abs.separating)
    throw NotStandardError(
        "orthogonal dilation: ker(1 + D^2) != {0}, kappa(H) would not be cyclic");
  const int n = abs.n;

  // Split H = ker(D) (+) ran(D) and build the phase on the range part.
  Eigen::JacobiSVD<Mat> svd(abs.d, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > kKernelCut) ++rank;
  if (rank % 2 != 0)
    throw DimensionError(
        "orthogonal dilation: ran(D) has odd dimension, impossible for a "
        "nondegenerate antisymmetric form");

  // W = V sqrt(1 + D^2) on ran(D), identity on ker(D) (plain
  // complexification of the totally degenerate part).
  Mat w = Mat::Identity(n, n);
  if (rank > 0) {
    const Mat u_f = svd.matrixU().leftCols(rank);
    const Mat d_f = u_f.transpose() * abs.d * u_f;  // skew, trivial kernel
    // Polar phase of D restricted to ran(D): V = D |D|^{-1}.
    const Mat abs_d_inv =
        sym_function((d_f.transpose() * d_f).eval(), [](double x) {
          return x > kKernelCut ? 1.0 / std::sqrt(x) : 0.0;
        });
    const Mat v_phase = d_f * abs_d_inv;
    const Mat s_f =
        sqrtm_psd(Mat::Identity(rank, rank) + d_f * d_f);
    Mat w_full = u_f * (v_phase * s_f) * u_f.transpose();
    if (rank < n) {
      const Mat u_a = svd.matrixU().rightCols(n - rank);
      w_full += u_a * u_a.transpose();
    }
    w = w_full;
  }

  Mat i_op(2 * n, 2 * n);
  i_op.topLeftCorner(n, n) = -abs.d;
  i_op.topRightCorner(n, n) = -w;
  i_op.bottomLeftCorner(n, n) = w.transpose();
  i_op.bottomRightCorner(n, n) = abs.d;

  Mat kappa = Mat::Zero(2 * n, n);
  kappa.topRows(n) = abs.a_sqrt;
  return assemble_structure(abs, std::move(i_op), std::move(kappa));
}

OneParticleStructure symplectic_dilation(const AbstractSubspace& abs) {
  if (!abs.factorial)
    throw SingularityError("symplectic dilation requires a factorial input");
  const int n = abs.n;
  const Mat id = Mat::Identity(n, n);
  const Mat d_inv = abs.d.partialPivLu().solve(id);
  const Mat s = sqrtm_psd(id + abs.d * abs.d);
  const Mat d_inv_s = d_inv * s;

  Mat iota(2 * n, 2 * n);
  iota.topLeftCorner(n, n) = d_inv;
  iota.topRightCorner(n, n) = d_inv_s;
  iota.bottomLeftCorner(n, n) = -d_inv_s;
  iota.bottomRightCorner(n, n) = -d_inv;

  // alpha-hat(xi, eta) = beta-hat(xi, iota eta) with beta-hat = beta (+) -beta.
  Mat beta_hat = Mat::Zero(2 * n, 2 * n);
  beta_hat.topLeftCorner(n, n) = abs.d;
  beta_hat.bottomRightCorner(n, n) = -abs.d;
  Mat g = beta_hat * iota;
  g = 0.5 * (g + g.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw ConsistencyError("symplectic dilation: alpha-hat is not positive");
  const Vec sqrt_ev = es.eigenvalues().cwiseSqrt();
  const Mat g_sqrt =
      es.eigenvectors() * sqrt_ev.asDiagonal() * es.eigenvectors().transpose();
  const Mat g_inv_sqrt = es.eigenvectors() * sqrt_ev.cwiseInverse().asDiagonal() *
                         es.eigenvectors().transpose();

  // Orthonormal coordinates for alpha-hat.
  Mat i_op = g_sqrt * iota * g_inv_sqrt;
  i_op = 0.5 * (i_op - i_op.transpose()).eval();
  Mat kappa = Mat::Zero(2 * n, n);
  kappa.topRows(n) = abs.a_sqrt;
  kappa = g_sqrt * kappa;

  auto ops = assemble_structure(abs, std::move(i_op), std::move(kappa));
  // iota preserves beta-hat: direct check in the pre-transform frame.
  ops.report.add("beta-hat(iota xi, iota eta) = beta-hat(xi, eta)",
                 (iota.transpose() * beta_hat * iota - beta_hat)
                     .cwiseAbs()
                     .maxCoeff(),
                 1e-10);
  return ops;
}

Mat one_particle_unitary(const OneParticleStructure& k1,
                         const OneParticleStructure& k2) {
  const int n = static_cast<int>(k1.kappa.cols());
  if (k2.kappa.cols() != n)
    throw DimensionError("one-particle structures are over different spaces");
  const Mat gram1_re = k1.kappa.transpose() * k1.kappa;
  const Mat gram2_re = k2.kappa.transpose() * k2.kappa;
  const Mat gram1_im = -k1.kappa.transpose() * k1.space.i_op * k1.kappa;
  const Mat gram2_im = -k2.kappa.transpose() * k2.space.i_op * k2.kappa;
  if (!approx_zero(gram1_re - gram2_re, 1e-8) ||
      !approx_zero(gram1_im - gram2_im, 1e-8))
    throw ConsistencyError(
        "one_particle_unitary: embeddings reproduce different (alpha, beta)");

  Mat m1(2 * n, 2 * n), m2(2 * n, 2 * n);
  m1.leftCols(n) = k1.kappa;
  m1.rightCols(n) = k1.space.i_op * k1.kappa;
  m2.leftCols(n) = k2.kappa;
  m2.rightCols(n) = k2.space.i_op * k2.kappa;
  return m2 * m1.partialPivLu().solve(Mat::Identity(2 * n, 2 * n));
}

AbstractSubspace sample_abstract_subspace(int n, Rng& rng, double sigma_min,
                                          double sigma_max) {
  if (n <= 0) throw DimensionError("sample_abstract_subspace: n must be positive");
  if (n % 2 != 0)
    throw DimensionError(
        "sample_abstract_subspace: factorial inputs need even dimension");

  const Mat q = random_orthogonal(n, rng);
  Vec ev(n);
  for (int i = 0; i < n; ++i) ev(i) = rng.uniform(0.5, 2.0);
  const Mat a = q * ev.asDiagonal() * q.transpose();

  Mat d0 = Mat::Zero(n, n);
  for (int j = 0; j < n / 2; ++j) {
    const double sigma = rng.uniform(sigma_min, sigma_max);
    d0(2 * j, 2 * j + 1) = sigma;
    d0(2 * j + 1, 2 * j) = -sigma;
  }
  const Mat o = random_orthogonal(n, rng);
  const Mat d_on = o * d0 * o.transpose();

  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  const Vec sqrt_ev = es.eigenvalues().cwiseSqrt();
  const Mat a_sqrt =
      es.eigenvectors() * sqrt_ev.asDiagonal() * es.eigenvectors().transpose();
  Mat b = a_sqrt * d_on * a_sqrt;
  b = 0.5 * (b - b.transpose()).eval();
  return abstract_subspace(a, b);
}

StandardSubspace sample_factorial_subspace(int n_complex, Rng& rng) {
  const AbstractSubspace abs = sample_abstract_subspace(n_complex, rng);
  const OneParticleStructure ops = orthogonal_dilation(abs);
  // Rotate the ambient so the subspace is in general position.
  const Mat r = random_orthogonal(2 * n_complex, rng);
  const RealifiedSpace rotated = RealifiedSpace::with_structure(
      r * ops.space.i_op * r.transpose());
  return standard_subspace_from_basis(rotated, r * ops.subspace.basis);
}

}  // namespace modsub
