#include "modsub/stdspace.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace modsub {

namespace {

int numerical_rank(const Mat& m, double tol = 1e-10) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec sv = svd.singularValues();
  const double cutoff = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

Mat orthonormalize(const Mat& vectors) {
  Eigen::HouseholderQR<Mat> qr(vectors);
  Mat q = qr.householderQ() * Mat::Identity(vectors.rows(), vectors.cols());
  // Fix column signs so the basis is a deterministic function of the input.
  const Mat r = qr.matrixQR().topRows(vectors.cols());
  for (int j = 0; j < q.cols(); ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace

StandardSubspace standard_subspace_from_basis(const RealifiedSpace& ambient,
                                              const Mat& vectors) {
  const int two_n = ambient.real_dim();
  const int n = ambient.n_complex;
  if (vectors.rows() != two_n)
    throw DimensionError("basis vectors do not live in the ambient space");
  const int k = static_cast<int>(vectors.cols());
  if (numerical_rank(vectors) != k)
    throw NotStandardError("basis vectors are not linearly independent");

  // dim(H + iH) = 2k - dim(H n iH); cyclic and separating together force
  // dim H = N exactly.
  Mat both(two_n, 2 * k);
  both.leftCols(k) = vectors;
  both.rightCols(k) = ambient.i_op * vectors;
  const int rank_sum = numerical_rank(both);
  const int dim_intersection = 2 * k - rank_sum;
  const bool cyclic = rank_sum == two_n;
  const bool separating = dim_intersection == 0;
  if (!separating)
    throw NotStandardError(
        "not separating: dim(H n iH) = " + std::to_string(dim_intersection) +
        " (rank of [H, iH] = " + std::to_string(rank_sum) + ")");
  if (!cyclic)
    throw NotStandardError(
        "not cyclic: rank of [H, iH] = " + std::to_string(rank_sum) +
        " < " + std::to_string(two_n));

  StandardSubspace h;
  h.ambient = ambient;
  h.basis = orthonormalize(vectors);
  h.cyclic = cyclic;
  h.separating = separating;
  // Factorial iff ker(D_H) = 0, equivalently H n H' = {0}.
  const Mat d = -h.basis.transpose() * ambient.i_op * h.basis;
  h.factorial = n == 0 || numerical_rank(d, 1e-10) == n;
  return h;
}

StandardSubspace real_line_subspace(int n_complex) {
  const RealifiedSpace space = RealifiedSpace::standard(n_complex);
  Mat basis = Mat::Zero(2 * n_complex, n_complex);
  basis.topRows(n_complex) = Mat::Identity(n_complex, n_complex);
  return standard_subspace_from_basis(space, basis);
}

ModularData modular_data(const StandardSubspace& h) {
  if (!h.cyclic || !h.separating)
    throw NotStandardError("modular data requires a standard subspace");
  const int n = h.n();
  const Mat& b = h.basis;
  const Mat ib = h.ambient.i_op * b;
  Mat m(2 * n, 2 * n), sm(2 * n, 2 * n);
  m.leftCols(n) = b;
  m.rightCols(n) = ib;
  sm.leftCols(n) = b;
  sm.rightCols(n) = -ib;

  ModularData md;
  md.s = sm * m.partialPivLu().solve(Mat::Identity(2 * n, 2 * n));
  Mat delta = md.s.transpose() * md.s;
  md.delta = 0.5 * (delta + delta.transpose());
  md.j = md.s * sym_function(md.delta, [](double x) {
    return 1.0 / std::sqrt(std::max(x, 1e-300));
  });
  md.l = sym_function(md.delta,
                      [](double x) { return std::log(std::max(x, 1e-300)); });
  return md;
}

Mat projection_E(const StandardSubspace& h) {
  return projection_E(h, modular_data(h));
}

Mat projection_E(const StandardSubspace& h, const ModularData& md) {
  const Mat e_gram = h.e_gram();
  const Mat inv1p = md.delta_function([](double x) { return 1.0 / (1.0 + x); });
  const Mat sqrt_inv1p =
      md.delta_function([](double x) { return std::sqrt(x) / (1.0 + x); });
  const Mat e_formula = inv1p + md.j * sqrt_inv1p;
  const double gap = (e_gram - e_formula).cwiseAbs().maxCoeff();
  if (gap > 1e-8)
    throw ConsistencyError("projection_E: Gram and modular formulas disagree by " +
                           std::to_string(gap));
  return e_gram;
}

namespace {

void check_delta_guard(const ModularData& md) {
  Eigen::SelfAdjointEigenSolver<Mat> es(md.delta, Eigen::EigenvaluesOnly);
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double lambda = es.eigenvalues()(i);
    if (std::abs(lambda - 1.0) <= kDeltaGuardBand)
      throw SingularityError(
          "cutting projection singular: spec(Delta) contains " +
          std::to_string(lambda) + " inside the guard band around 1");
  }
}

}  // namespace

Mat cutting_P(const StandardSubspace& h) {
  return cutting_P(h, modular_data(h));
}

Mat cutting_P(const StandardSubspace& h, const ModularData& md) {
  if (!h.factorial)
    throw SingularityError("cutting projection requires a factorial subspace");
  check_delta_guard(md);

  const int n = h.n();
  const Mat& b = h.basis;
  const Mat bp = md.j * b;  // basis of H' = J H
  Mat m(2 * n, 2 * n), target(2 * n, 2 * n);
  m.leftCols(n) = b;
  m.rightCols(n) = bp;
  target.leftCols(n) = b;
  target.rightCols(n).setZero();
  const Mat p_direct = target * m.partialPivLu().solve(Mat::Identity(2 * n, 2 * n));

  const Mat inv1m = md.delta_function([](double x) { return 1.0 / (1.0 - x); });
  const Mat sqrt_inv1m =
      md.delta_function([](double x) { return std::sqrt(x) / (1.0 - x); });
  const Mat p_formula = inv1m + md.j * sqrt_inv1m;

  const Mat e = h.e_gram();
  const Mat coth_half =
      md.delta_function([](double x) { return (x + 1.0) / (x - 1.0); });
  const Mat p_pe = -e * coth_half;

  const double gap_fp = (p_direct - p_formula).cwiseAbs().maxCoeff();
  const double gap_pe = (p_direct - p_pe).cwiseAbs().maxCoeff();
  if (std::max(gap_fp, gap_pe) > 1e-8)
    throw ConsistencyError(
        "cutting_P: direct and modular formulas disagree (fP gap " +
        std::to_string(gap_fp) + ", PE gap " + std::to_string(gap_pe) + ")");
  return p_direct;
}

EmbeddedPolariser polariser_embedded(const StandardSubspace& h, double tol) {
  const ModularData md = modular_data(h);
  const Mat& b = h.basis;
  const Mat& i_op = h.ambient.i_op;
  const int n = h.n();
  const Mat id = Mat::Identity(n, n);

  EmbeddedPolariser out;
  out.d = h.polariser();
  const Mat one_plus_d2 = id + out.d * out.d;
  out.trace_one_plus_d2 = one_plus_d2.trace();

  // tanh(L/2) etc. as functions of Delta = e^L.
  const Mat tanh_half =
      md.delta_function([](double x) { return (x - 1.0) / (x + 1.0); });
  const Mat sech_half = md.delta_function(
      [](double x) { return 2.0 * std::sqrt(x) / (x + 1.0); });

  out.report.add("D = i tanh(L/2)|_H",
                 (out.d - h.restrict(i_op * tanh_half)).cwiseAbs().maxCoeff(),
                 tol);
  out.report.add(
      "sqrt(1+D^2) = 1/cosh(L/2)|_H",
      (sqrtm_psd(one_plus_d2) - h.restrict(sech_half)).cwiseAbs().maxCoeff(),
      tol);

  if (h.factorial) {
    const Mat d_inv = out.d.partialPivLu().solve(id);
    const Mat p = cutting_P(h, md);
    const Mat coth_half =
        md.delta_function([](double x) { return (x + 1.0) / (x - 1.0); });
    const Mat csch_half = md.delta_function(
        [](double x) { return 2.0 * std::sqrt(x) / (x - 1.0); });

    out.report.add("D^{-1} = P i|_H",
                   (d_inv - b.transpose() * (p * i_op * b)).cwiseAbs().maxCoeff(),
                   tol);
    out.report.add(
        "D^{-1} = -i coth(L/2)|_H",
        (d_inv - h.restrict(-i_op * coth_half)).cwiseAbs().maxCoeff(), tol);
    out.report.add("D^{-1} sqrt(1+D^2) = -i/sinh(L/2)|_H",
                   (d_inv * sqrtm_psd(one_plus_d2) -
                    h.restrict(-i_op * csch_half)).cwiseAbs().maxCoeff(),
                   tol);
  } else {
    out.report.note(
        "inverse identities skipped: H is not factorial (ker D != 0)");
  }

  const Mat e = h.e_gram();
  const Mat e_prime = md.j * e * md.j;  // E_{H'} = J E_H J
  const Mat e_ih = i_op * e * i_op.transpose();
  out.report.add("E_H E_{H'}|_H = 1 + D^2",
                 (b.transpose() * (e * e_prime * b) - one_plus_d2)
                     .cwiseAbs()
                     .maxCoeff(),
                 tol);
  out.report.add("E_H E_{H'}|_H + E_H E_{iH}|_H = 1",
                 (b.transpose() * (e * e_prime * b + e * e_ih * b) - id)
                     .cwiseAbs()
                     .maxCoeff(),
                 tol);
  return out;
}

SymplecticBlocks symplectic_blocks(const Mat& c, const StandardSubspace& h,
                                   double tol) {
  if (!h.factorial)
    throw SingularityError("symplectic blocks require a factorial subspace");
  const ModularData md = modular_data(h);
  const int n = h.n();
  const Mat id = Mat::Identity(n, n);
  const Mat& b = h.basis;
  const Mat bp = md.j * b;
  const Mat& i_op = h.ambient.i_op;

  const Mat p = cutting_P(h, md);
  const Mat pp = Mat::Identity(2 * n, 2 * n) - p;

  SymplecticBlocks out;
  out.c11 = b.transpose() * (p * c * b);
  out.c12 = b.transpose() * (p * c * bp);
  out.c21 = bp.transpose() * (pp * c * b);
  out.c22 = bp.transpose() * (pp * c * bp);

  // Closed forms in (B, JB) coordinates, where J reads as the identity.
  const Mat d = h.polariser();
  const Mat d_inv = d.partialPivLu().solve(id);
  const Mat sq = sqrtm_psd(id + d * d);
  const Mat d_inv_sq = d_inv * sq;

  const SymplecticBlocks i_blocks = [&] {
    SymplecticBlocks ib;
    ib.c11 = b.transpose() * (p * i_op * b);
    ib.c12 = b.transpose() * (p * i_op * bp);
    ib.c21 = bp.transpose() * (pp * i_op * b);
    ib.c22 = bp.transpose() * (pp * i_op * bp);
    return ib;
  }();
  out.report.add("i11 = D^{-1}",
                 (i_blocks.c11 - d_inv).cwiseAbs().maxCoeff(), tol);
  out.report.add("i12 = D^{-1} sqrt(1+D^2) J",
                 (i_blocks.c12 - d_inv_sq).cwiseAbs().maxCoeff(), tol);
  out.report.add("i21 = -J D^{-1} sqrt(1+D^2)",
                 (i_blocks.c21 + d_inv_sq).cwiseAbs().maxCoeff(), tol);
  out.report.add("i22 = -J D^{-1} J",
                 (i_blocks.c22 + d_inv).cwiseAbs().maxCoeff(), tol);

  const Mat e = h.e_gram();
  const Mat e_perp = Mat::Identity(2 * n, 2 * n) - e;
  const Mat e_prime = md.j * e * md.j;
  const auto blocks_of = [&](const Mat& a) {
    SymplecticBlocks sb;
    sb.c11 = b.transpose() * (p * a * b);
    sb.c12 = b.transpose() * (p * a * bp);
    sb.c21 = bp.transpose() * (pp * a * b);
    sb.c22 = bp.transpose() * (pp * a * bp);
    return sb;
  };
  const SymplecticBlocks eb = blocks_of(e);
  out.report.add("E_H = [[1, sqrt(1+D^2) J],[0, 0]]",
                 std::max({(eb.c11 - id).cwiseAbs().maxCoeff(),
                           (eb.c12 - sq).cwiseAbs().maxCoeff(),
                           eb.c21.cwiseAbs().maxCoeff(),
                           eb.c22.cwiseAbs().maxCoeff()}),
                 tol);
  const SymplecticBlocks epb = blocks_of(e_perp);
  out.report.add("E_{H perp} = [[0, -sqrt(1+D^2) J],[0, 1]]",
                 std::max({epb.c11.cwiseAbs().maxCoeff(),
                           (epb.c12 + sq).cwiseAbs().maxCoeff(),
                           epb.c21.cwiseAbs().maxCoeff(),
                           (epb.c22 - id).cwiseAbs().maxCoeff()}),
                 tol);
  const SymplecticBlocks eprb = blocks_of(e_prime);
  out.report.add("E_{H'} = [[0, 0],[J sqrt(1+D^2), 1]]",
                 std::max({eprb.c11.cwiseAbs().maxCoeff(),
                           eprb.c12.cwiseAbs().maxCoeff(),
                           (eprb.c21 - sq).cwiseAbs().maxCoeff(),
                           (eprb.c22 - id).cwiseAbs().maxCoeff()}),
                 tol);

  // Eq. P'i: P_{H'} i|_H = -J D^{-1} sqrt(1+D^2).
  out.report.add("P_{H'} i|_H = -J D^{-1} sqrt(1+D^2)",
                 (bp.transpose() * (pp * i_op * b) + d_inv_sq)
                     .cwiseAbs()
                     .maxCoeff(),
                 tol);
  return out;
}

}  // namespace modsub
