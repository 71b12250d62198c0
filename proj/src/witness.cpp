#include "qcw/witness.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "qcw/schmidt.hpp"

namespace qcw {

namespace {

RVec ascending_psd_spectrum(const CMat& m, const char* who) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << who << ": operator must be square";
    throw InvalidInput(msg.str());
  }
  const double herm = hermiticity_deviation(m);
  if (herm > tol::state) {
    std::ostringstream msg;
    msg << who << ": operator deviates from Hermitian by " << herm;
    throw InvalidInput(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  RVec lambda = es.eigenvalues();
  if (lambda(0) < -tol::state) {
    std::ostringstream msg;
    msg << who << ": operator has negative eigenvalue " << lambda(0);
    throw InvalidInput(msg.str());
  }
  return lambda;
}

// (1 (x) B)|psi> without forming the Kronecker product.
CVec apply_right_factor(const CMat& b, const CVec& psi) {
  const int d = static_cast<int>(b.rows());
  CVec out(psi.size());
  for (int m = 0; m < d; ++m)
    out.segment(m * d, d) = b * psi.segment(m * d, d);
  return out;
}

}  // namespace

const char* to_string(BoundsMethod m) {
  switch (m) {
    case BoundsMethod::ClosedFormProduct: return "closed-form-product";
    case BoundsMethod::ClosedFormFlip: return "closed-form-flip";
    case BoundsMethod::ClosedFormRankOne: return "closed-form-rank-one";
    case BoundsMethod::Numerical: return "numerical";
  }
  return "numerical";
}

WitnessBounds bounds_product(const CMat& a, const CMat& b) {
  const RVec la = ascending_psd_spectrum(a, "bounds_product");
  const RVec lb = ascending_psd_spectrum(b, "bounds_product");
  if (la.size() != lb.size())
    throw InvalidInput("bounds_product: factors have different dimensions");
  const int d = static_cast<int>(la.size());

  WitnessBounds out;
  out.method = BoundsMethod::ClosedFormProduct;
  for (int n = 0; n < d; ++n) {
    out.gme_max += la(n) * lb(n);
    out.gme_min += la(n) * lb(d - 1 - n);
  }
  out.gme_max /= d;
  out.gme_min /= d;
  out.gs_max = la(d - 1) * lb(d - 1);
  out.gs_min = la(0) * lb(0);
  out.g_max = out.gs_max;
  out.g_min = out.gs_min;
  return out;
}

WitnessBounds bounds_flip(const CMat& a, const CMat& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw InvalidInput("bounds_flip: factors must be square and equal-sized");
  const int d = static_cast<int>(a.rows());
  Eigen::JacobiSVD<CMat> svd(b * a.adjoint());
  const RVec s = svd.singularValues();  // descending

  WitnessBounds out;
  out.method = BoundsMethod::ClosedFormFlip;
  if (d == 1) {
    // One-dimensional total space: the observable is the scalar S_0^2 and
    // no skew-symmetric unitary exists, so every bound collapses onto it.
    const double v = s(0) * s(0);
    out = WitnessBounds{v, v, v, v, v, v, BoundsMethod::ClosedFormFlip, false};
    return out;
  }
  out.g_max = s(0) * s(0);
  out.g_min = -s(0) * s(1);
  out.gs_max = out.g_max;
  out.gs_min = 0.0;
  out.gme_max = s.squaredNorm() / d;
  double pairing = 0.0;
  for (int n = 0; 2 * n + 1 < d; ++n) pairing += 2.0 * s(2 * n) * s(2 * n + 1);
  if (d % 2 == 1) pairing -= s(d - 1) * s(d - 1);
  out.gme_min = -pairing / d;
  return out;
}

WitnessBounds bounds_rank_one(const PureState& psi,
                              const OptimizerConfig& cfg) {
  const int d = psi.dims().d;
  const SchmidtData sd = schmidt_decompose(psi);
  const double norm1 = sd.sigma.lpNorm<1>();

  WitnessBounds out;
  out.method = BoundsMethod::ClosedFormRankOne;
  out.g_max = 1.0;
  out.g_min = 0.0;
  out.gs_min = 0.0;
  out.gs_max = sd.sigma(0) * sd.sigma(0);
  out.gme_max = norm1 * norm1 / d;
  const CVec& v = psi.amplitudes();
  const CMat projector = v * v.adjoint();
  // No closed form exists for the rank-one ME minimum (phase cancellation
  // depends on a polygon condition); the optimizer supplies it.  The true
  // value is a squared overlap, so clamp roundoff at zero.
  out.gme_min = std::max(0.0, optimize_me(projector, cfg).worst_value);
  out.gme_min_numerical = true;
  return out;
}

double white_noise_threshold(const PureState& psi) {
  const int d = psi.dims().d;
  if (d == 1) return 1.0;  // the only state is both separable and ME
  const SchmidtData sd = schmidt_decompose(psi);
  const double norm1 = sd.sigma.lpNorm<1>();
  const double best = std::max(norm1 * norm1 / d, sd.sigma(0) * sd.sigma(0));
  return (double(d) * d * best - 1.0) / (double(d) * d - 1.0);
}

UnitalityDeviation unitality_test(const DensityOperator& rho) {
  const int d = rho.dims().d;
  const CMat target = CMat::Identity(d, d) / double(d);
  UnitalityDeviation out;
  out.dev_a =
      max_abs_diff(partial_trace(rho.matrix(), rho.dims(), Subsystem::B),
                   target);
  out.dev_b =
      max_abs_diff(partial_trace(rho.matrix(), rho.dims(), Subsystem::A),
                   target);
  return out;
}

StationarityCertificate stationarity_certificate(const CMat& l,
                                                 const PureState& psi_me) {
  const int d = psi_me.dims().d;
  if (l.rows() != l.cols() || l.rows() != d * d)
    throw InvalidInput("stationarity_certificate: observable size mismatch");
  const double herm = hermiticity_deviation(l);
  if (herm > tol::state) {
    std::ostringstream msg;
    msg << "stationarity_certificate: observable deviates from Hermitian by "
        << herm;
    throw InvalidInput(msg.str());
  }
  const SchmidtData sd = schmidt_decompose(psi_me);
  const GeometryProfile profile = geometry_profile(sd.sigma);
  if (profile.classification != StateClass::MaximallyEntangled) {
    std::ostringstream msg;
    msg << "stationarity_certificate: state is not maximally entangled "
           "(sqrt(d)*||sigma||_inf = "
        << std::sqrt(double(d)) * profile.norm_inf << ")";
    throw InvalidInput(msg.str());
  }

  const CVec& psi = psi_me.amplitudes();
  const CVec w = l * psi;

  // Hermitian basis: d diagonal units, then real and imaginary off-diagonal
  // pairs.  Least squares over the d^2 real coefficients of Gamma in
  // w = d (1 (x) Gamma)|psi>, stacking real and imaginary equation parts.
  std::vector<CMat> basis;
  basis.reserve(d * d);
  for (int k = 0; k < d; ++k) {
    CMat e = CMat::Zero(d, d);
    e(k, k) = 1.0;
    basis.push_back(e);
  }
  for (int p = 0; p < d; ++p)
    for (int q = p + 1; q < d; ++q) {
      CMat sym = CMat::Zero(d, d);
      sym(p, q) = 1.0;
      sym(q, p) = 1.0;
      basis.push_back(sym);
      CMat skew = CMat::Zero(d, d);
      skew(p, q) = Complex(0.0, 1.0);
      skew(q, p) = Complex(0.0, -1.0);
      basis.push_back(skew);
    }

  const int n_eq = 2 * d * d;
  RMat system(n_eq, static_cast<int>(basis.size()));
  RVec target(n_eq);
  for (int i = 0; i < d * d; ++i) {
    target(2 * i) = w(i).real();
    target(2 * i + 1) = w(i).imag();
  }
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const CVec column = double(d) * apply_right_factor(basis[col], psi);
    for (int i = 0; i < d * d; ++i) {
      system(2 * i, col) = column(i).real();
      system(2 * i + 1, col) = column(i).imag();
    }
  }
  const RVec x = system.colPivHouseholderQr().solve(target);

  StationarityCertificate cert;
  cert.gamma = CMat::Zero(d, d);
  for (std::size_t i = 0; i < basis.size(); ++i)
    cert.gamma += x(static_cast<int>(i)) * basis[i];
  cert.residual =
      (w - double(d) * apply_right_factor(cert.gamma, psi)).norm();
  cert.value = cert.gamma.trace().real();
  return cert;
}

Verdict verdict(const CMat& l, const DensityOperator& rho,
                const WitnessBounds& bounds) {
  if (l.rows() != l.cols() || l.rows() != rho.matrix().rows())
    throw InvalidInput("verdict: observable and state dimensions differ");
  Verdict out;
  out.expectation = (rho.matrix() * l).trace().real();
  out.margins.above_gme_max = out.expectation - bounds.gme_max;
  out.margins.below_gme_min = bounds.gme_min - out.expectation;
  out.margins.above_gs_max = out.expectation - bounds.gs_max;
  out.margins.below_gs_min = bounds.gs_min - out.expectation;
  // Equality is inconclusive; flags need a strict margin beyond epsilon.
  const double eps = tol::verdict_margin;
  out.not_me_mixture = out.margins.above_gme_max > eps ||
                       out.margins.below_gme_min > eps;
  out.entangled =
      out.margins.above_gs_max > eps || out.margins.below_gs_min > eps;
  return out;
}

}  // namespace qcw
