#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace modsub {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using cplx = std::complex<double>;

// Default absolute tolerance for identity residuals (N <= 32, double precision).
inline constexpr double kDefaultTol = 1e-9;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotStandardError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DottedConstraintError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Deterministic, portable RNG: the mt19937_64 bit stream (fully specified by
// the standard) with explicit uniform/normal conversions, so residual tables
// and CSV bodies reproduce byte-identically across platforms.
// std::normal_distribution is implementation-defined and avoided on purpose.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {  // Box-Muller
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Mat matrix(int rows, int cols) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = normal();
    return m;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline double frobenius(const Mat& m) { return m.norm(); }

// Operator 2-norm (largest singular value).
double op_norm(const Mat& m);

inline bool approx_zero(const Mat& m, double tol = kDefaultTol) {
  return m.size() == 0 || m.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace modsub
