#ifndef QCW_TESTS_TEST_UTIL_HPP
#define QCW_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <numbers>
#include <random>

#include "qcw/types.hpp"

namespace qcwtest {

using qcw::CMat;
using qcw::Complex;
using qcw::CVec;
using qcw::RVec;

// Seeded generators for test fixtures; reproducible within a build.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }

  double gauss() {
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex cgauss() { return {gauss(), gauss()}; }

  CMat matrix(int rows, int cols) {
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = cgauss();
    return m;
  }

  CMat hermitian(int d) {
    const CMat g = matrix(d, d);
    return 0.5 * (g + g.adjoint());
  }

  CMat psd(int d) {
    const CMat g = matrix(d, d);
    return g * g.adjoint() / double(d);
  }

  CVec unit_vector(int len) {
    CVec v(len);
    for (int i = 0; i < len; ++i) v(i) = cgauss();
    return v / v.norm();
  }

  // Non-negative vector with unit 2-norm.
  RVec schmidt_vector(int d) {
    RVec v(d);
    for (int i = 0; i < d; ++i) v(i) = uniform() + 1e-3;
    return v / v.norm();
  }

 private:
  std::mt19937_64 gen_;
};

inline double max_abs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace qcwtest

#endif  // QCW_TESTS_TEST_UTIL_HPP
