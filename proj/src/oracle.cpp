#include "qcw/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "qcw/core.hpp"

namespace qcw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Portable Gaussian stream: explicit Box-Muller over 53-bit uniforms from
// mt19937_64, so a fixed seed reproduces the run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }  // [0, 1)

  double gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

  Complex complex_gauss() { return {gauss(), gauss()}; }

  CVec unit_vector(int d) {
    CVec v(d);
    for (int i = 0; i < d; ++i) v(i) = complex_gauss();
    return v / v.norm();
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

void require_hermitian(const CMat& l, const char* who) {
  const double dev = hermiticity_deviation(l);
  if (dev > tol::state) {
    std::ostringstream msg;
    msg << who << ": observable deviates from Hermitian by " << dev;
    throw InvalidInput(msg.str());
  }
}

void check_config(const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw InvalidInput("optimizer: restarts must be >= 1");
  if (cfg.max_iters < 1) throw InvalidInput("optimizer: max_iters must be >= 1");
  if (cfg.step_tol <= 0.0) throw InvalidInput("optimizer: step_tol must be > 0");
}

// exp(t S) for anti-Hermitian S, via the spectrum of the Hermitian iS.
CMat exp_antihermitian(const CMat& s, double t) {
  Eigen::SelfAdjointEigenSolver<CMat> es(Complex(0.0, 1.0) * s);
  const CVec phases = (Complex(0.0, -t) * es.eigenvalues()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Deterministic overall phase: largest-magnitude component real positive.
void fix_phase(CVec& v) {
  Eigen::Index idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  if (std::abs(v(idx)) > 0.0) v *= std::conj(v(idx)) / std::abs(v(idx));
}

// f(U) = <psi|L|psi> with |psi> = (1 (x) U)|Phi>/sqrt(d).
double me_objective(const CMat& l, const CMat& u) {
  const int d = static_cast<int>(u.rows());
  const CVec psi = operator_to_state(u) / std::sqrt(double(d));
  return psi.dot(l * psi).real();
}

struct AscentOutcome {
  double value = 0.0;
  CMat unitary;
};

// Gradient ascent on the unitary group with a backtracking line search:
// direction is the anti-Hermitian part of U^dagger G, G the Euclidean
// gradient; step starts at 0.1 and halves until improvement.
AscentOutcome ascend_me(const CMat& l, CMat u, const OptimizerConfig& cfg) {
  const int d = static_cast<int>(u.rows());
  const double sqrt_d = std::sqrt(double(d));
  double f = me_objective(l, u);
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const CVec psi = operator_to_state(u) / sqrt_d;
    const CMat grad = state_to_operator(l * psi) / sqrt_d;
    const CMat k = u.adjoint() * grad;
    const CMat skew = 0.5 * (k - k.adjoint());
    const double gnorm = skew.norm();
    if (gnorm < cfg.step_tol) break;
    // Unit-length direction so the accepted step tracks the remaining
    // distance to the optimum instead of the shrinking gradient.
    const CMat direction = skew / gnorm;
    bool improved = false;
    for (double eps = 0.1; eps >= 1e-14; eps *= 0.5) {
      const CMat u_try = u * exp_antihermitian(direction, eps);
      const double f_try = me_objective(l, u_try);
      if (f_try > f) {
        u = u_try;
        f = f_try;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return {f, std::move(u)};
}

// L restricted to subsystem A for a fixed |b>: (L_b)_{mn} = <m,b|L|n,b>.
CMat restrict_to_a(const CMat& l, const CVec& b) {
  const int d = static_cast<int>(b.size());
  CMat out(d, d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n)
      out(m, n) = b.dot(l.block(m * d, n * d, d, d) * b);
  return out;
}

// L restricted to subsystem B for a fixed |a>: (L_a)_{pq} = <a,p|L|a,q>.
CMat restrict_to_b(const CMat& l, const CVec& a) {
  const int d = static_cast<int>(a.size());
  CMat out = CMat::Zero(d, d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n)
      out.noalias() += std::conj(a(m)) * a(n) * l.block(m * d, n * d, d, d);
  return out;
}

CVec extremal_eigenvector(const CMat& h, bool top, double* value) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  const Eigen::Index idx = top ? h.rows() - 1 : 0;
  *value = es.eigenvalues()(idx);
  CVec v = es.eigenvectors().col(idx);
  fix_phase(v);
  return v;
}

struct SepOutcome {
  double value = 0.0;
  CVec a, b;
};

SepOutcome iterate_sep(const CMat& l, CVec a, CVec b, bool maximize,
                       const OptimizerConfig& cfg) {
  double g = std::numeric_limits<double>::quiet_NaN();
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    double ga = 0.0, gb = 0.0;
    a = extremal_eigenvector(restrict_to_a(l, b), maximize, &ga);
    b = extremal_eigenvector(restrict_to_b(l, a), maximize, &gb);
    if (iter > 0 && std::abs(gb - g) < cfg.step_tol) {
      g = gb;
      // Stationarity needs both separability eigenvalue equations at once.
      const CVec res_a = restrict_to_a(l, b) * a - g * a;
      const CVec res_b = restrict_to_b(l, a) * b - g * b;
      if (res_a.norm() + res_b.norm() < 1e-8) break;
    }
    g = gb;
  }
  return {g, std::move(a), std::move(b)};
}

}  // namespace

CMat random_unitary(int d, std::uint64_t seed) {
  if (d < 1) throw InvalidInput("random_unitary: d must be positive");
  Rng rng(seed);
  CMat ginibre(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) ginibre(i, j) = rng.complex_gauss();
  Eigen::HouseholderQR<CMat> qr(ginibre);
  CMat q = qr.householderQ() * CMat::Identity(d, d);
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

MeOptResult optimize_me(const CMat& l, const OptimizerConfig& cfg) {
  check_config(cfg);
  if (l.rows() != l.cols()) throw InvalidInput("optimize_me: non-square input");
  require_hermitian(l, "optimize_me");
  const int d = local_dim_of_vector_length(l.rows());

  MeOptResult out;
  double best_lo = std::numeric_limits<double>::infinity();
  double best_hi = -best_lo, worst_lo = best_lo, worst_hi = -best_lo;
  for (int r = 0; r < cfg.restarts; ++r) {
    const CMat u0 = random_unitary(d, cfg.seed + std::uint64_t(r));
    const AscentOutcome up = ascend_me(l, u0, cfg);
    const AscentOutcome down = ascend_me(-l, u0, cfg);
    best_lo = std::min(best_lo, up.value);
    worst_hi = std::max(worst_hi, -down.value);
    if (up.value > best_hi) {
      best_hi = up.value;
      out.argmax_unitary = up.unitary;
    }
    if (-down.value < worst_lo) {
      worst_lo = -down.value;
      out.argmin_unitary = down.unitary;
    }
  }
  out.best_value = best_hi;
  out.worst_value = worst_lo;
  out.spread = std::max(best_hi - best_lo, worst_hi - worst_lo);
  return out;
}

SepOptResult optimize_sep(const CMat& l, const OptimizerConfig& cfg) {
  check_config(cfg);
  if (l.rows() != l.cols()) throw InvalidInput("optimize_sep: non-square input");
  require_hermitian(l, "optimize_sep");
  const int d = local_dim_of_vector_length(l.rows());

  SepOptResult out;
  double best_lo = std::numeric_limits<double>::infinity();
  double best_hi = -best_lo, worst_lo = best_lo, worst_hi = -best_lo;
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng(cfg.seed + std::uint64_t(r));
    const CVec a0 = rng.unit_vector(d);
    const CVec b0 = rng.unit_vector(d);
    const SepOutcome up = iterate_sep(l, a0, b0, true, cfg);
    const SepOutcome down = iterate_sep(l, a0, b0, false, cfg);
    best_lo = std::min(best_lo, up.value);
    worst_hi = std::max(worst_hi, down.value);
    if (up.value > best_hi) {
      best_hi = up.value;
      out.argmax_a = up.a;
      out.argmax_b = up.b;
    }
    if (down.value < worst_lo) {
      worst_lo = down.value;
      out.argmin_a = down.a;
      out.argmin_b = down.b;
    }
  }
  out.best_value = best_hi;
  out.worst_value = worst_lo;
  out.spread = std::max(best_hi - best_lo, worst_hi - worst_lo);
  return out;
}

ChebyshevCheck chebyshev_check(const RVec& a, const RVec& b, const CMat& u) {
  const int d = static_cast<int>(a.size());
  if (b.size() != d || u.rows() != d || u.cols() != d)
    throw InvalidInput("chebyshev_check: dimension mismatch");
  for (int i = 0; i + 1 < d; ++i)
    if (a(i) > a(i + 1) + 1e-12 || b(i) > b(i + 1) + 1e-12)
      throw InvalidInput("chebyshev_check: sequences must be ascending");
  const double udev = max_abs_diff(u.adjoint() * u, CMat::Identity(d, d));
  if (udev > tol::state) {
    std::ostringstream msg;
    msg << "chebyshev_check: matrix deviates from unitarity by " << udev;
    throw InvalidInput(msg.str());
  }

  ChebyshevCheck out;
  for (int i = 0; i < d; ++i) {
    out.rhs += a(i) * b(i);
    out.reversed += a(i) * b(d - 1 - i);
    for (int j = 0; j < d; ++j)
      out.lhs += std::norm(u(i, j)) * a(i) * b(j);
  }
  out.holds = out.lhs <= out.rhs + 1e-12;
  out.holds_lower = out.reversed <= out.lhs + 1e-12;
  return out;
}

}  // namespace qcw
