#ifndef QCW_TYPES_HPP
#define QCW_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qcw {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Absolute tolerances shared across the library.
namespace tol {
inline constexpr double state = 1e-10;          // hermiticity, PSD, trace, norms
inline constexpr double classify = 1e-8;        // geometry classes, RU/RP exclusion
inline constexpr double rank_cut = 1e-12;       // eigenvalue cut in kraus_of_choi
inline constexpr double verdict_margin = 1e-9;  // strict-inequality detection
}  // namespace tol

// Bad caller-supplied data (file contents, invalid states, dimension
// mismatches).  The CLI maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Breakdown inside an otherwise well-posed computation (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Local dimension of a bipartite d x d system; both subsystems share d.
struct BipartiteDims {
  int d = 0;

  int total() const { return d * d; }
  bool operator==(const BipartiteDims&) const = default;
};

// Matrix equality throughout the library is max elementwise absolute
// difference.
template <typename DerivedA, typename DerivedB>
double max_abs_diff(const Eigen::MatrixBase<DerivedA>& a,
                    const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() == 0 && b.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

template <typename Derived>
double hermiticity_deviation(const Eigen::MatrixBase<Derived>& m) {
  return max_abs_diff(m, m.adjoint());
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

}  // namespace qcw

#endif  // QCW_TYPES_HPP
