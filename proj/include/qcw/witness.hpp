#ifndef QCW_WITNESS_HPP
#define QCW_WITNESS_HPP

// Closed-form witness bounds for product, flip-type, and rank-one
// observables, the unitality test, white-noise thresholds, stationarity
// certificates for the maximally entangled optimization, and the verdict
// engine that turns a measured expectation value into exclusions.

#include "qcw/core.hpp"
#include "qcw/oracle.hpp"
#include "qcw/types.hpp"

namespace qcw {

enum class BoundsMethod {
  ClosedFormProduct,
  ClosedFormFlip,
  ClosedFormRankOne,
  Numerical,
};

const char* to_string(BoundsMethod m);

// Six expectation-value bounds for one observable: over all states (g),
// over separable pure states (gs), over maximally entangled pure states
// (gme).  Always g_min <= gme_min <= gme_max <= g_max and
// g_min <= gs_min <= gs_max <= g_max.
struct WitnessBounds {
  double g_max = 0.0;
  double g_min = 0.0;
  double gs_max = 0.0;
  double gs_min = 0.0;
  double gme_max = 0.0;
  double gme_min = 0.0;
  BoundsMethod method = BoundsMethod::Numerical;
  // Rank-one observables have no closed-form gme_min; that one field comes
  // from the optimizer.
  bool gme_min_numerical = false;
};

// Least-squares Lagrange operator Gamma for L|psi> = d (1 (x) Gamma)|psi>
// over Hermitian Gamma.  residual ~ 0 certifies a stationary point of the
// maximally entangled optimization; value = tr(Gamma) is the stationary
// expectation value.
struct StationarityCertificate {
  CMat gamma;
  double residual = 0.0;
  double value = 0.0;
};

// Signed distances to the four thresholds; positive means violated.
struct VerdictMargins {
  double above_gme_max = 0.0;
  double below_gme_min = 0.0;
  double above_gs_max = 0.0;
  double below_gs_min = 0.0;
};

// Classification implied by one expectation value.  not_me_mixture excludes
// any random-unitary description of the corresponding channel; entangled
// excludes any random-projective one.  Absence of a flag proves nothing.
struct Verdict {
  double expectation = 0.0;
  bool not_me_mixture = false;
  bool entangled = false;
  VerdictMargins margins;
};

// Max-elementwise deviations of the two reduced states from 1/d; both
// vanish on Choi states of RU channels.
struct UnitalityDeviation {
  double dev_a = 0.0;  // tr_B(rho) vs 1/d
  double dev_b = 0.0;  // tr_A(rho) vs 1/d
};

// Bounds for L = A (x) B with A, B Hermitian PSD, via the sorted and
// anti-sorted eigenvalue pairings.
WitnessBounds bounds_product(const CMat& a, const CMat& b);

// Bounds for L = (A (x) B) F (A (x) B)^dagger in terms of the singular
// values of B A^dagger; the ME minimum uses the Youla pairing, with the
// odd-dimension correction.
WitnessBounds bounds_flip(const CMat& a, const CMat& b);

// Bounds for L = |psi><psi|: gme_max = ||sigma||_1^2 / d,
// gs_max = ||sigma||_inf^2; gme_min is delegated to the optimizer.
WitnessBounds bounds_rank_one(const PureState& psi,
                              const OptimizerConfig& cfg = {});

// Largest white-noise admixture 1 - p* the state (1-p) 1/d^2 + p |psi><psi|
// survives while still violating one of the rank-one bounds.
double white_noise_threshold(const PureState& psi);

UnitalityDeviation unitality_test(const DensityOperator& rho);

// psi_me must be maximally entangled within the classification tolerance.
StationarityCertificate stationarity_certificate(const CMat& l,
                                                 const PureState& psi_me);

Verdict verdict(const CMat& l, const DensityOperator& rho,
                const WitnessBounds& bounds);

}  // namespace qcw

#endif  // QCW_WITNESS_HPP
