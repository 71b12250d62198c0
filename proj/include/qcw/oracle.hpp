#ifndef QCW_ORACLE_HPP
#define QCW_ORACLE_HPP

// Independent ground truth for the closed-form witness bounds: seeded
// multi-restart optimizers over pure maximally entangled states (gradient
// ascent on the unitary group) and over pure product states (alternating
// extremal-eigenvector iteration), Haar-random unitary sampling, and the
// generalized Chebyshev sum inequality checker.

#include <cstdint>

#include "qcw/types.hpp"

namespace qcw {

struct OptimizerConfig {
  std::uint64_t seed = 0;
  int restarts = 32;
  int max_iters = 500;
  double step_tol = 1e-10;
};

// Extrema of f(U) = <Phi|(1 (x) U^dagger) L (1 (x) U)|Phi>/d over unitaries.
// spread is the larger of the per-restart value spreads on the two sides;
// raise restarts when it exceeds ~1e-6.
struct MeOptResult {
  double best_value = 0.0;
  double worst_value = 0.0;
  CMat argmax_unitary;
  CMat argmin_unitary;
  double spread = 0.0;
};

// Extrema of <a,b|L|a,b> over unit product vectors.
struct SepOptResult {
  double best_value = 0.0;
  double worst_value = 0.0;
  CVec argmax_a, argmax_b;
  CVec argmin_a, argmin_b;
  double spread = 0.0;
};

// Both directions of the generalized Chebyshev sum inequality for
// G_{ij} = |<i|U|j>|^2 and ascending sequences a, b:
//   sum_i a_i b_{d-1-i}  <=  sum_{ij} G_{ij} a_i b_j  <=  sum_i a_i b_i.
struct ChebyshevCheck {
  double lhs = 0.0;          // sum_{ij} G_{ij} a_i b_j
  double rhs = 0.0;          // sorted sum, upper bound
  double reversed = 0.0;     // anti-sorted sum, lower bound
  bool holds = false;        // lhs <= rhs + 1e-12
  bool holds_lower = false;  // reversed <= lhs + 1e-12
};

// Haar-distributed d x d unitary: QR of a complex Ginibre matrix with the
// triangular-factor phase correction.  Deterministic for a fixed seed.
CMat random_unitary(int d, std::uint64_t seed);

// Maximizes and minimizes f(U) over the unitary group; restart r uses seed
// cfg.seed + r.  L must be Hermitian d^2 x d^2.
MeOptResult optimize_me(const CMat& l, const OptimizerConfig& cfg = {});

// Alternating fixed-point iteration on the separability eigenvalue
// equations; returned pairs are stationary to residual < 1e-8.
SepOptResult optimize_sep(const CMat& l, const OptimizerConfig& cfg = {});

ChebyshevCheck chebyshev_check(const RVec& a, const RVec& b, const CMat& u);

}  // namespace qcw

#endif  // QCW_ORACLE_HPP
