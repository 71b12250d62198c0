#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcw/channels.hpp"
#include "qcw/schmidt.hpp"
#include "qcw/witness.hpp"
#include "test_util.hpp"

using namespace qcw;
using qcwtest::Gen;

namespace {

CMat cdiag(std::initializer_list<double> entries) {
  CMat m = CMat::Zero(Eigen::Index(entries.size()), Eigen::Index(entries.size()));
  Eigen::Index i = 0;
  for (double e : entries) m(i, i) = e, ++i;
  return m;
}

PureState bell_state() {
  return PureState::from_vector(phi_vector(2) / std::sqrt(2.0));
}

PureState asym_state() {
  CVec v = CVec::Zero(4);
  v(0) = std::sqrt(0.8);
  v(3) = std::sqrt(0.2);
  return PureState::from_vector(v);
}

PureState random_me_state(int d, std::uint64_t seed) {
  const CMat u = random_unitary(d, seed);
  return PureState::from_vector(operator_to_state(u) / std::sqrt(double(d)));
}

void check_ordering(const WitnessBounds& b) {
  CHECK(b.g_min <= b.gme_min + 1e-12);
  CHECK(b.gme_min <= b.gme_max + 1e-12);
  CHECK(b.gme_max <= b.g_max + 1e-12);
  CHECK(b.g_min <= b.gs_min + 1e-12);
  CHECK(b.gs_min <= b.gs_max + 1e-12);
  CHECK(b.gs_max <= b.g_max + 1e-12);
}

}  // namespace

TEST_CASE("product bounds collapse on the identity") {
  const WitnessBounds b =
      bounds_product(CMat::Identity(2, 2), CMat::Identity(2, 2));
  CHECK(b.gme_max == doctest::Approx(1.0));
  CHECK(b.gme_min == doctest::Approx(1.0));
  CHECK(b.method == BoundsMethod::ClosedFormProduct);
}

TEST_CASE("product bounds for diag(0,1) x diag(0,1)") {
  const WitnessBounds b = bounds_product(cdiag({0, 1}), cdiag({0, 1}));
  CHECK(b.gme_max == doctest::Approx(0.5));
  CHECK(b.gme_min == doctest::Approx(0.0));
  CHECK(b.gs_max == doctest::Approx(1.0));
  CHECK(b.gs_min == doctest::Approx(0.0));
  CHECK(b.g_max == doctest::Approx(1.0));
  check_ordering(b);
}

TEST_CASE("product bounds for diag(1,2) x diag(3,4)") {
  const WitnessBounds b = bounds_product(cdiag({1, 2}), cdiag({3, 4}));
  CHECK(b.gme_max == doctest::Approx(5.5));
  CHECK(b.gme_min == doctest::Approx(5.0));
  CHECK(b.gs_max == doctest::Approx(8.0));
  CHECK(b.gs_min == doctest::Approx(3.0));
  check_ordering(b);
}

TEST_CASE("product bounds reject invalid factors") {
  Gen gen(41);
  CHECK_THROWS_AS(bounds_product(gen.matrix(2, 2), cdiag({1, 1})),
                  InvalidInput);
  CHECK_THROWS_AS(bounds_product(cdiag({-1, 1}), cdiag({1, 1})), InvalidInput);
}

TEST_CASE("product observables witness ME but never entanglement") {
  Gen gen(42);
  for (int d : {2, 3}) {
    const CMat a = gen.psd(d);
    const CMat b = gen.psd(d);
    const WitnessBounds w = bounds_product(a, b);
    check_ordering(w);
    CHECK(w.gs_max == w.g_max);  // cannot be a proper entanglement witness
    CHECK(w.gs_min == w.g_min);
    CHECK(w.gme_max < w.g_max);  // nondegenerate random spectra
  }
}

TEST_CASE("unitality deviations") {
  const CMat z = cdiag({1, -1});
  const ChoiState dephased =
      choi_of_channel(make_ru({0.5, 0.5}, {CMat::Identity(2, 2), z}));
  const UnitalityDeviation u1 = unitality_test(dephased.state);
  CHECK(u1.dev_a < 1e-12);
  CHECK(u1.dev_b < 1e-12);

  const UnitalityDeviation u2 = unitality_test(
      DensityOperator::from_matrix(CMat::Identity(4, 4) / 4.0));
  CHECK(u2.dev_a == doctest::Approx(0.0));
  CHECK(u2.dev_b == doctest::Approx(0.0));

  CVec sep = CVec::Zero(4);
  sep(0) = 1.0;  // |0,0>
  const UnitalityDeviation u3 =
      unitality_test(DensityOperator::from_pure(PureState::from_vector(sep)));
  CHECK(u3.dev_a == doctest::Approx(0.5));
  CHECK(u3.dev_b == doctest::Approx(0.5));
}

TEST_CASE("flip bounds for the plain flip at d=2") {
  const WitnessBounds b =
      bounds_flip(CMat::Identity(2, 2), CMat::Identity(2, 2));
  CHECK(b.g_max == doctest::Approx(1.0));
  CHECK(b.g_min == doctest::Approx(-1.0));
  CHECK(b.gs_min == doctest::Approx(0.0));
  CHECK(b.gme_max == doctest::Approx(1.0));
  CHECK(b.gme_min == doctest::Approx(-1.0));
  CHECK(b.method == BoundsMethod::ClosedFormFlip);
  check_ordering(b);
}

TEST_CASE("flip bounds odd-dimension correction at d=3") {
  const WitnessBounds b =
      bounds_flip(CMat::Identity(3, 3), CMat::Identity(3, 3));
  CHECK(b.gme_min == doctest::Approx(-1.0 / 3.0));
  CHECK(b.gme_max == doctest::Approx(1.0));
  check_ordering(b);
}

TEST_CASE("flip bounds for singular values (2,1)") {
  const WitnessBounds b = bounds_flip(CMat::Identity(2, 2), cdiag({2, 1}));
  CHECK(b.g_max == doctest::Approx(4.0));
  CHECK(b.g_min == doctest::Approx(-2.0));
  CHECK(b.gme_max == doctest::Approx(2.5));
  CHECK(b.gme_min == doctest::Approx(-2.0));
  CHECK(b.gs_max == doctest::Approx(4.0));
  CHECK(b.gs_min == doctest::Approx(0.0));
  check_ordering(b);
}

TEST_CASE("flip bounds collapse at d=1") {
  CMat a(1, 1), b(1, 1);
  a << 2;
  b << 3;
  const WitnessBounds w = bounds_flip(a, b);
  CHECK(w.g_max == doctest::Approx(36.0));
  CHECK(w.gme_min == w.gme_max);
  CHECK(w.g_min == w.g_max);
}

TEST_CASE("flip bounds against the oracle") {
  Gen gen(43);
  const int d = 3;
  const CMat a = gen.matrix(d, d);
  const CMat b = gen.matrix(d, d);
  const CMat l = kron(a, b) * flip_operator(d) * kron(a, b).adjoint();
  const WitnessBounds w = bounds_flip(a, b);
  CHECK(w.gme_max < w.g_max);  // admissibility for distinct singular values
  const MeOptResult r = optimize_me(l, OptimizerConfig{.seed = 8});
  CHECK(std::abs(r.best_value - w.gme_max) < 1e-6);
  CHECK(r.best_value < w.gme_max + 1e-7);  // tight from below only
  CHECK(std::abs(r.worst_value - w.gme_min) < 1e-6);
}

TEST_CASE("rank-one bounds at the two vertices") {
  const WitnessBounds bell = bounds_rank_one(bell_state());
  CHECK(bell.gme_max == doctest::Approx(1.0));
  CHECK(bell.gs_max == doctest::Approx(0.5));
  CHECK(bell.g_max == doctest::Approx(1.0));
  CHECK(bell.gme_min_numerical);
  check_ordering(bell);

  CVec sep = CVec::Zero(4);
  sep(0) = 1.0;
  const WitnessBounds prod = bounds_rank_one(PureState::from_vector(sep));
  CHECK(prod.gme_max == doctest::Approx(0.5));
  CHECK(prod.gs_max == doctest::Approx(1.0));
  check_ordering(prod);
}

TEST_CASE("rank-one bounds for an intermediate state") {
  const WitnessBounds b = bounds_rank_one(asym_state());
  CHECK(b.gme_max == doctest::Approx(0.9).epsilon(1e-10));
  CHECK(b.gs_max == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(b.gme_min >= 0.0);
  // A shifted-diagonal unitary makes some ME state orthogonal to any
  // product-diagonal state, so the numerical minimum sits at zero.
  CHECK(b.gme_min < 1e-8);
  check_ordering(b);

  const SepOptResult sep = optimize_sep(
      asym_state().amplitudes() * asym_state().amplitudes().adjoint(),
      OptimizerConfig{.seed = 9});
  CHECK(std::abs(sep.best_value - b.gs_max) < 1e-8);
}

TEST_CASE("white-noise thresholds") {
  CHECK(white_noise_threshold(asym_state()) ==
        doctest::Approx(13.0 / 15.0).epsilon(1e-12));
  CHECK(white_noise_threshold(bell_state()) == doctest::Approx(1.0));
  CVec sep = CVec::Zero(4);
  sep(0) = 1.0;
  CHECK(white_noise_threshold(PureState::from_vector(sep)) ==
        doctest::Approx(1.0));
}

TEST_CASE("white-noise mixture flips exactly at the threshold") {
  const PureState psi = asym_state();
  const double p_star = white_noise_threshold(psi);
  const CMat proj = psi.amplitudes() * psi.amplitudes().adjoint();
  const WitnessBounds b = bounds_rank_one(psi);
  for (double offset : {0.01, -0.01}) {
    const double p = p_star + offset;
    const CMat rho = (1.0 - p) * CMat::Identity(4, 4) / 4.0 + p * proj;
    const Verdict v = verdict(proj, DensityOperator::from_matrix(rho), b);
    const int flags = int(v.not_me_mixture) + int(v.entangled);
    if (offset > 0)
      CHECK(flags == 2);
    else
      CHECK(flags <= 1);
  }
}

TEST_CASE("stationarity certificate for a diagonal product observable") {
  const CMat a = cdiag({1, 2});
  const CMat b = cdiag({3, 4});
  const PureState phi_norm =
      PureState::from_vector(phi_vector(2) / std::sqrt(2.0));
  const StationarityCertificate cert =
      stationarity_certificate(kron(a, b), phi_norm);
  CHECK(cert.residual < 1e-10);
  CHECK(cert.value == doctest::Approx((1.0 * 3.0 + 2.0 * 4.0) / 2.0));
  CHECK(hermiticity_deviation(cert.gamma) < 1e-12);
}

TEST_CASE("stationarity certificate of the identity observable") {
  for (int d : {2, 3}) {
    const PureState psi = random_me_state(d, 60 + d);
    const StationarityCertificate cert =
        stationarity_certificate(CMat::Identity(d * d, d * d), psi);
    CHECK(cert.residual < 1e-10);
    CHECK(cert.value == doctest::Approx(1.0));
  }
}

TEST_CASE("random observables are generically non-stationary") {
  Gen gen(44);
  const int d = 3;
  int above = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const CMat l = gen.hermitian(d * d);
    const PureState psi = random_me_state(d, 7000 + rep);
    if (stationarity_certificate(l, psi).residual > 1e-4) ++above;
  }
  CHECK(above >= 95);
}

TEST_CASE("stationarity certificate validates its input") {
  Gen gen(45);
  CHECK_THROWS_AS(stationarity_certificate(gen.matrix(4, 4), bell_state()),
                  InvalidInput);
  CHECK_THROWS_WITH_AS(
      stationarity_certificate(CMat::Identity(4, 4), asym_state()),
      doctest::Contains("maximally entangled"), InvalidInput);
}

TEST_CASE("oracle argmax passes the stationarity certificate") {
  Gen gen(46);
  const int d = 2;
  const CMat l = gen.hermitian(d * d);
  const MeOptResult r = optimize_me(l, OptimizerConfig{.seed = 10});
  const PureState argmax = PureState::from_vector(
      operator_to_state(r.argmax_unitary) / std::sqrt(double(d)));
  const StationarityCertificate cert = stationarity_certificate(l, argmax);
  CHECK(cert.residual < 1e-6);
  CHECK(cert.value == doctest::Approx(r.best_value).epsilon(1e-8));
}

TEST_CASE("verdict on the singlet under the flip") {
  CVec singlet(4);
  singlet << 0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0;
  const WitnessBounds b =
      bounds_flip(CMat::Identity(2, 2), CMat::Identity(2, 2));
  const Verdict v = verdict(
      flip_operator(2),
      DensityOperator::from_pure(PureState::from_vector(singlet)), b);
  CHECK(v.expectation == doctest::Approx(-1.0));
  CHECK(v.entangled);
  CHECK_FALSE(v.not_me_mixture);  // the singlet is itself an ME state
  CHECK(v.margins.below_gs_min == doctest::Approx(1.0));
}

TEST_CASE("verdict on the Bell state under its own projector") {
  const PureState bell = bell_state();
  const CMat proj = bell.amplitudes() * bell.amplitudes().adjoint();
  const WitnessBounds b = bounds_rank_one(bell);
  const Verdict v = verdict(proj, DensityOperator::from_pure(bell), b);
  CHECK(v.expectation == doctest::Approx(1.0));
  CHECK(v.entangled);
  CHECK_FALSE(v.not_me_mixture);
}

TEST_CASE("verdict treats equality as inconclusive") {
  const PureState bell = bell_state();
  const CMat proj = bell.amplitudes() * bell.amplitudes().adjoint();
  CVec sep = CVec::Zero(4);
  sep(0) = 1.0;
  const Verdict v =
      verdict(proj, DensityOperator::from_pure(PureState::from_vector(sep)),
              bounds_rank_one(bell));
  CHECK(v.expectation == doctest::Approx(0.5));
  CHECK_FALSE(v.entangled);
  CHECK_FALSE(v.not_me_mixture);
}

TEST_CASE("verdict rejects mismatched dimensions") {
  const WitnessBounds b;
  CHECK_THROWS_AS(
      verdict(CMat::Identity(9, 9),
              DensityOperator::from_matrix(CMat::Identity(4, 4) / 4.0), b),
      InvalidInput);
}

TEST_CASE("RU Choi states never trip the ME flag") {
  Gen gen(47);
  for (int rep = 0; rep < 6; ++rep) {
    const int d = 2 + rep % 2;
    std::vector<double> probs{0.3, 0.7};
    std::vector<CMat> us{random_unitary(d, 800 + rep),
                         random_unitary(d, 900 + rep)};
    const ChoiState choi = choi_of_channel(make_ru(probs, us));

    const CMat a = gen.psd(d);
    const CMat b = gen.psd(d);
    const Verdict vp =
        verdict(kron(a, b), choi.state, bounds_product(a, b));
    CHECK_FALSE(vp.not_me_mixture);

    const CMat c = gen.matrix(d, d);
    const CMat e = gen.matrix(d, d);
    const CMat l = kron(c, e) * flip_operator(d) * kron(c, e).adjoint();
    const Verdict vf = verdict(l, choi.state, bounds_flip(c, e));
    CHECK_FALSE(vf.not_me_mixture);
  }
}
