#include "qcw/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qcw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Rotates the pair (e, f) so the largest-magnitude component of e is real
// positive; the product e f^T is unchanged.
void fix_pair_phase(CVec& e, CVec& f) {
  Eigen::Index idx = 0;
  e.cwiseAbs().maxCoeff(&idx);
  const Complex z = e(idx);
  if (std::abs(z) < 1e-15) return;
  const Complex phase = z / std::abs(z);
  e *= std::conj(phase);
  f *= phase;
}

bool lex_less(const CVec& x, const CVec& y) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i).real() != y(i).real()) return x(i).real() < y(i).real();
    if (x(i).imag() != y(i).imag()) return x(i).imag() < y(i).imag();
  }
  return false;
}

}  // namespace

const char* to_string(StateClass c) {
  switch (c) {
    case StateClass::SeparablePure: return "separable-pure";
    case StateClass::MaximallyEntangled: return "maximally-entangled";
    case StateClass::Intermediate: return "intermediate";
  }
  return "intermediate";
}

SchmidtData schmidt_decompose(const PureState& psi) {
  const int d = psi.dims().d;
  // Coefficient matrix C_{m,n} = <m,n|psi>; C = E diag(sigma) F^T.
  CMat coeff(d, d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) coeff(m, n) = psi.amplitudes()(m * d + n);

  Eigen::JacobiSVD<CMat> svd(coeff, Eigen::ComputeFullU | Eigen::ComputeFullV);

  struct Triple {
    double sigma;
    CVec e;
    CVec f;
  };
  std::vector<Triple> triples(d);
  for (int k = 0; k < d; ++k) {
    triples[k].sigma = svd.singularValues()(k);
    triples[k].e = svd.matrixU().col(k);
    triples[k].f = svd.matrixV().col(k).conjugate();
    fix_pair_phase(triples[k].e, triples[k].f);
  }
  // Singular values arrive descending; order degenerate blocks by the first
  // basis to keep the output deterministic.
  std::stable_sort(triples.begin(), triples.end(),
                   [](const Triple& a, const Triple& b) {
                     if (std::abs(a.sigma - b.sigma) > 1e-12)
                       return a.sigma > b.sigma;
                     return lex_less(a.e, b.e);
                   });

  SchmidtData out;
  out.sigma = RVec(d);
  out.basis_a = CMat(d, d);
  out.basis_b = CMat(d, d);
  for (int k = 0; k < d; ++k) {
    out.sigma(k) = triples[k].sigma;
    out.basis_a.col(k) = triples[k].e;
    out.basis_b.col(k) = triples[k].f;
  }
  return out;
}

GdftResult gdft(const RVec& sigma, int d) {
  if (sigma.size() != d)
    throw InvalidInput("gdft: sigma length does not match d");
  if (d < 1) throw InvalidInput("gdft: d must be positive");
  for (int n = 0; n < d; ++n)
    if (sigma(n) < 0.0) {
      std::ostringstream msg;
      msg << "gdft: entry " << n << " is negative (" << sigma(n) << ")";
      throw InvalidInput(msg.str());
    }

  GdftResult out{RVec(d), RVec(d)};
  const double scale = 1.0 / std::sqrt(double(d));
  for (int k = 0; k < d; ++k) {
    Complex raw = 0.0;
    for (int n = 0; n < d; ++n)
      raw += std::polar(sigma(n), kTwoPi * k * n / d);
    raw *= scale;
    out.tau(k) = std::abs(raw);
    out.theta(k) = out.tau(k) <= 1e-12 ? 0.0 : -std::arg(raw) + 0.0;
  }
  return out;
}

RVec gdft_inverse(const RVec& tau, const RVec& theta, int d) {
  if (tau.size() != d || theta.size() != d)
    throw InvalidInput("gdft_inverse: length mismatch");
  const double scale = 1.0 / std::sqrt(double(d));
  RVec sigma(d);
  for (int n = 0; n < d; ++n) {
    Complex acc = 0.0;
    for (int k = 0; k < d; ++k)
      acc += std::polar(tau(k), -theta(k) - kTwoPi * k * n / d);
    sigma(n) = (scale * acc).real();
  }
  return sigma;
}

ComplementarySchmidtData complementary_decompose(const PureState& psi) {
  const int d = psi.dims().d;
  const SchmidtData sd = schmidt_decompose(psi);
  const GdftResult g = gdft(sd.sigma, d);

  ComplementarySchmidtData out;
  out.tau = g.tau;
  out.theta = g.theta;
  out.basis_a = sd.basis_a;
  out.basis_b = sd.basis_b;
  out.me_states.reserve(d);
  const double scale = 1.0 / std::sqrt(double(d));
  for (int k = 0; k < d; ++k) {
    // |F_{k,0}> = (1 (x) U_k)|Phi>/sqrt(d) with U_k diagonal phases
    // phi_{k,n} = -(2 pi / d) k n - theta_k.
    CVec state = CVec::Zero(d * d);
    for (int n = 0; n < d; ++n)
      state(n * d + n) =
          scale * std::polar(1.0, -kTwoPi * k * n / d - g.theta(k));
    out.me_states.push_back(std::move(state));
  }
  return out;
}

GeometryProfile geometry_profile(const RVec& sigma, double class_tol) {
  const int d = static_cast<int>(sigma.size());
  if (d < 1) throw InvalidInput("geometry_profile: empty vector");
  GeometryProfile p;
  p.norm1 = sigma.lpNorm<1>();
  p.norm2 = sigma.norm();
  p.norm_inf = sigma.lpNorm<Eigen::Infinity>();
  if (std::abs(p.norm2 - 1.0) > tol::state) {
    std::ostringstream msg;
    msg << "geometry_profile: ||sigma||_2 = " << p.norm2
        << " deviates from 1 beyond " << tol::state;
    throw InvalidInput(msg.str());
  }
  if (std::abs(p.norm1 - 1.0) <= class_tol)
    p.classification = StateClass::SeparablePure;
  else if (std::abs(std::sqrt(double(d)) * p.norm_inf - 1.0) <= class_tol)
    p.classification = StateClass::MaximallyEntangled;
  else
    p.classification = StateClass::Intermediate;
  return p;
}

std::vector<CVec> fourier_me_basis(int d) {
  if (d < 1) throw InvalidInput("fourier_me_basis: d must be positive");
  std::vector<CVec> basis;
  basis.reserve(d * d);
  const double scale = 1.0 / std::sqrt(double(d));
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      CVec state = CVec::Zero(d * d);
      for (int q = 0; q < d; ++q)
        state(q * d + (q + n) % d) = scale * std::polar(1.0, kTwoPi * q * m / d);
      basis.push_back(std::move(state));
    }
  return basis;
}

}  // namespace qcw
