// Command-line front end: state analysis, channel classification, witness
// bounds, and geometry surface export.  Prints a JSON report to stdout.
// Exit codes: 0 analysis completed (verdicts live in the report), 2 invalid
// input, 3 internal numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcw/channels.hpp"
#include "qcw/io.hpp"
#include "qcw/oracle.hpp"
#include "qcw/schmidt.hpp"
#include "qcw/witness.hpp"

namespace {

using namespace qcw;
using io::Json;

struct CommonOptions {
  std::uint64_t seed = 0;
  int restarts = 32;
  double tolerance = tol::classify;
  std::string format = "json";
  std::string out_dir;
};

OptimizerConfig optimizer_config(const CommonOptions& opts) {
  OptimizerConfig cfg;
  cfg.seed = opts.seed;
  cfg.restarts = opts.restarts;
  return cfg;
}

Json input_entry(const std::string& path) {
  return Json{{"path", path}, {"digest", io::file_digest(path)}};
}

Json bounds_to_json(const WitnessBounds& b) {
  Json j{{"g_max", b.g_max},     {"g_min", b.g_min},
         {"gs_max", b.gs_max},   {"gs_min", b.gs_min},
         {"gme_max", b.gme_max}, {"gme_min", b.gme_min},
         {"method", to_string(b.method)}};
  if (b.gme_min_numerical) j["gme_min_method"] = "numerical";
  return j;
}

// Merges expectation, flags, and margins into an existing results object,
// next to the bounds they were checked against.
void append_verdict(Json& target, const Verdict& v) {
  Json flags = Json::array();
  if (v.not_me_mixture) flags.push_back("not-me-mixture");
  if (v.entangled) flags.push_back("entangled");
  target["expectation"] = v.expectation;
  target["flags"] = flags;
  target["margins"] = Json{{"above_gme_max", v.margins.above_gme_max},
                           {"below_gme_min", v.margins.below_gme_min},
                           {"above_gs_max", v.margins.above_gs_max},
                           {"below_gs_min", v.margins.below_gs_min}};
}

Json real_vector_to_json(const RVec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

// Detected operator class plus the matching bounds.  Detection order:
// rank-one, then product (factorization of the reshuffled matrix), then
// general; flip-type is never auto-detected because L alone does not
// determine the (A, B) factors.
struct ClassifiedBounds {
  std::string op_class;
  WitnessBounds bounds;
  Json extra = Json::object();
};

void enforce_ordering(WitnessBounds& b) {
  b.gme_max = std::min(b.gme_max, b.g_max);
  b.gme_min = std::max(b.gme_min, b.g_min);
  b.gs_max = std::min(b.gs_max, b.g_max);
  b.gs_min = std::max(b.gs_min, b.g_min);
}

WitnessBounds scaled(WitnessBounds b, double c) {
  b.g_max *= c;
  b.g_min *= c;
  b.gs_max *= c;
  b.gs_min *= c;
  b.gme_max *= c;
  b.gme_min *= c;
  return b;
}

bool try_product_factors(const CMat& l, int d, CMat& a_out, CMat& b_out) {
  // Reshuffle: R[(m,m'),(n,n')] = L[(m,n),(m',n')]; rank one iff L = A (x) B.
  CMat r(d * d, d * d);
  for (int m = 0; m < d; ++m)
    for (int mp = 0; mp < d; ++mp)
      for (int n = 0; n < d; ++n)
        for (int np = 0; np < d; ++np)
          r(m * d + mp, n * d + np) = l(m * d + n, mp * d + np);
  Eigen::JacobiSVD<CMat> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec s = svd.singularValues();
  if (s(0) <= 0.0 || s(1) > 1e-10 * s(0)) return false;

  CMat a(d, d), b(d, d);
  for (int m = 0; m < d; ++m)
    for (int mp = 0; mp < d; ++mp) a(m, mp) = svd.matrixU()(m * d + mp, 0);
  for (int n = 0; n < d; ++n)
    for (int np = 0; np < d; ++np)
      b(n, np) = s(0) * std::conj(svd.matrixV()(n * d + np, 0));

  // A carries an arbitrary phase; rotate it Hermitian via its largest entry.
  Eigen::Index pi = 0, qi = 0;
  a.cwiseAbs().maxCoeff(&pi, &qi);
  const Complex prod = a(pi, qi) * std::conj(a(qi, pi));
  if (std::abs(prod) == 0.0) return false;
  const Complex half_phase = std::polar(1.0, std::arg(prod) / 2.0);
  a /= half_phase;
  b *= half_phase;
  if (hermiticity_deviation(a) > 1e-8 * a.cwiseAbs().maxCoeff()) return false;
  if (hermiticity_deviation(b) > 1e-8 * b.cwiseAbs().maxCoeff()) return false;
  a = CMat(0.5 * (a + a.adjoint()));
  b = CMat(0.5 * (b + b.adjoint()));
  if (a.trace().real() < 0.0) {
    a = -a;
    b = -b;
  }
  a_out = a;
  b_out = b;
  return true;
}

ClassifiedBounds classify_observable(const CMat& l, int d,
                                     const OptimizerConfig& cfg) {
  const double herm = hermiticity_deviation(l);
  if (herm > tol::state) {
    std::ostringstream msg;
    msg << "observable deviates from Hermitian by " << herm;
    throw InvalidInput(msg.str());
  }

  Eigen::SelfAdjointEigenSolver<CMat> es(l);
  const RVec lambda = es.eigenvalues();
  const double lam_max = lambda(d * d - 1);

  // Rank one: a single positive eigenvalue.
  if (lam_max > 0.0 &&
      std::max(std::abs(lambda(0)), std::abs(lambda(d * d - 2))) <=
          1e-10 * lam_max) {
    const PureState psi =
        PureState::from_vector(es.eigenvectors().col(d * d - 1));
    ClassifiedBounds out;
    out.op_class = "rank-one";
    out.bounds = scaled(bounds_rank_one(psi, cfg), lam_max);
    out.bounds.method = BoundsMethod::ClosedFormRankOne;
    if (std::abs(lam_max - 1.0) > 1e-12) out.extra["scale"] = lam_max;
    return out;
  }

  CMat a, b;
  if (try_product_factors(l, d, a, b)) {
    Eigen::SelfAdjointEigenSolver<CMat> esa(a, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<CMat> esb(b, Eigen::EigenvaluesOnly);
    if (esa.eigenvalues()(0) >= -1e-10 && esb.eigenvalues()(0) >= -1e-10) {
      ClassifiedBounds out;
      out.op_class = "product";
      out.bounds = bounds_product(a, b);
      return out;
    }
  }

  ClassifiedBounds out;
  out.op_class = "general";
  const MeOptResult me = optimize_me(l, cfg);
  const SepOptResult sep = optimize_sep(l, cfg);
  out.bounds.method = BoundsMethod::Numerical;
  out.bounds.g_max = lam_max;
  out.bounds.g_min = lambda(0);
  out.bounds.gme_max = me.best_value;
  out.bounds.gme_min = me.worst_value;
  out.bounds.gs_max = sep.best_value;
  out.bounds.gs_min = sep.worst_value;
  enforce_ordering(out.bounds);
  out.extra["me_spread"] = me.spread;
  out.extra["sep_spread"] = sep.spread;
  return out;
}

Json schmidt_to_json(const SchmidtData& sd, const ComplementarySchmidtData& cd,
                     const GeometryProfile& profile) {
  return Json{{"sigma", real_vector_to_json(sd.sigma)},
              {"tau", real_vector_to_json(cd.tau)},
              {"theta", real_vector_to_json(cd.theta)},
              {"norms",
               Json{{"l1", profile.norm1},
                    {"l2", profile.norm2},
                    {"linf", profile.norm_inf}}},
              {"class", to_string(profile.classification)}};
}

void emit_report(const io::Report& report, const CommonOptions& opts,
                 bool write_file) {
  const Json j = report.to_json();
  std::cout << j.dump(2) << std::endl;
  if (write_file && !opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    io::write_json_file(opts.out_dir + "/report.json", j);
  }
}

int cmd_analyze_state(const std::string& input, const std::string& observable,
                      const CommonOptions& opts) {
  io::Report report;
  report.command = "analyze-state";
  report.inputs["input"] = input_entry(input);

  const Json j = io::load_json_file(input);
  const CMat m = io::matrix_from_json(j);
  Json results;
  if (m.cols() == 1) {
    const PureState psi = PureState::from_vector(m.col(0));
    const SchmidtData sd = schmidt_decompose(psi);
    const ComplementarySchmidtData cd = complementary_decompose(psi);
    const GeometryProfile profile = geometry_profile(sd.sigma, opts.tolerance);
    const WitnessBounds self = bounds_rank_one(psi, optimizer_config(opts));
    results["kind"] = "pure";
    results["d"] = psi.dims().d;
    results["schmidt"] = schmidt_to_json(sd, cd, profile);
    results["self_witness"] = bounds_to_json(self);
    results["white_noise_threshold"] = white_noise_threshold(psi);
  } else {
    const DensityOperator rho = DensityOperator::from_matrix(m);
    const UnitalityDeviation unital = unitality_test(rho);
    results["kind"] = "mixed";
    results["d"] = rho.dims().d;
    results["unitality"] = Json{{"dev_a", unital.dev_a},
                                {"dev_b", unital.dev_b}};
    Json witness;
    if (!observable.empty()) {
      report.inputs["observable"] = input_entry(observable);
      const CMat l = io::matrix_from_json(io::load_json_file(observable));
      if (l.rows() != m.rows())
        throw InvalidInput("observable and state dimensions differ");
      const ClassifiedBounds cb =
          classify_observable(l, rho.dims().d, optimizer_config(opts));
      witness["operator_class"] = cb.op_class;
      witness["bounds"] = bounds_to_json(cb.bounds);
      if (!cb.extra.empty()) witness["detection"] = cb.extra;
      append_verdict(witness, verdict(l, rho, cb.bounds));
    } else {
      // Default witness: the flip observable with its closed-form bounds.
      const int d = rho.dims().d;
      const WitnessBounds fb =
          bounds_flip(CMat::Identity(d, d), CMat::Identity(d, d));
      witness["operator_class"] = "flip-type";
      witness["bounds"] = bounds_to_json(fb);
      append_verdict(witness, verdict(flip_operator(d), rho, fb));
    }
    results["witness"] = witness;
  }
  report.results = results;
  emit_report(report, opts, true);
  return 0;
}

int cmd_classify_channel(const std::string& input,
                         const std::string& observable,
                         const CommonOptions& opts) {
  io::Report report;
  report.command = "classify-channel";
  report.inputs["input"] = input_entry(input);

  const KrausChannel ch = io::channel_from_json(io::load_json_file(input));
  const ChoiState choi = choi_of_channel(ch);
  const int d = ch.dims().d;

  const UnitalityDeviation unital = unitality_test(choi.state);
  bool ru_excluded = std::max(unital.dev_a, unital.dev_b) > opts.tolerance;

  double min_eig_ta = 0.0, min_eig_tb = 0.0;
  for (Subsystem s : {Subsystem::A, Subsystem::B}) {
    const CMat pt = partial_transpose(choi.state.matrix(), ch.dims(), s);
    Eigen::SelfAdjointEigenSolver<CMat> es(pt, Eigen::EigenvaluesOnly);
    (s == Subsystem::A ? min_eig_ta : min_eig_tb) =
        es.eigenvalues().minCoeff();
  }
  bool rp_excluded =
      std::min(min_eig_ta, min_eig_tb) < -opts.tolerance;

  Json results{{"d", d},
               {"tag", to_string(ch.tag())},
               {"raw_trace", choi.raw_trace},
               {"unitality", Json{{"dev_a", unital.dev_a},
                                  {"dev_b", unital.dev_b}}},
               {"ppt", Json{{"min_eig_ta", min_eig_ta},
                            {"min_eig_tb", min_eig_tb}}}};
  if (!observable.empty()) {
    report.inputs["observable"] = input_entry(observable);
    const CMat l = io::matrix_from_json(io::load_json_file(observable));
    if (l.rows() != d * d)
      throw InvalidInput("observable and Choi state dimensions differ");
    const ClassifiedBounds cb =
        classify_observable(l, d, optimizer_config(opts));
    const Verdict v = verdict(l, choi.state, cb.bounds);
    ru_excluded = ru_excluded || v.not_me_mixture;
    rp_excluded = rp_excluded || v.entangled;
    Json wjson{{"operator_class", cb.op_class},
               {"bounds", bounds_to_json(cb.bounds)}};
    append_verdict(wjson, v);
    results["witness"] = wjson;
  }
  results["exclusions"] =
      Json{{"ru_excluded", ru_excluded}, {"rp_excluded", rp_excluded}};
  report.results = results;
  emit_report(report, opts, true);
  return 0;
}

int cmd_witness(const std::string& observable, const std::string& flip_a,
                const std::string& flip_b, const std::string& state,
                const CommonOptions& opts) {
  io::Report report;
  report.command = "witness";
  Json results;

  CMat l;
  if (!flip_a.empty() || !flip_b.empty()) {
    if (flip_a.empty() || flip_b.empty())
      throw InvalidInput("flip-type witnesses need both --flip-a and --flip-b");
    report.inputs["flip_a"] = input_entry(flip_a);
    report.inputs["flip_b"] = input_entry(flip_b);
    const CMat a = io::matrix_from_json(io::load_json_file(flip_a));
    const CMat b = io::matrix_from_json(io::load_json_file(flip_b));
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
      throw InvalidInput("flip factors must be square and equal-sized");
    const int d = static_cast<int>(a.rows());
    l = kron(a, b) * flip_operator(d) * kron(a, b).adjoint();
    // Congruence roundoff may leave a ~1e-16 skew part; the observable is
    // Hermitian by construction.
    l = CMat(0.5 * (l + l.adjoint()));
    results["operator_class"] = "flip-type";
    results["bounds"] = bounds_to_json(bounds_flip(a, b));
  } else if (!observable.empty()) {
    report.inputs["observable"] = input_entry(observable);
    l = io::matrix_from_json(io::load_json_file(observable));
    if (l.rows() != l.cols())
      throw InvalidInput("observable must be a square matrix");
    const int d = local_dim_of_vector_length(l.rows());
    const ClassifiedBounds cb =
        classify_observable(l, d, optimizer_config(opts));
    results["operator_class"] = cb.op_class;
    results["bounds"] = bounds_to_json(cb.bounds);
    if (!cb.extra.empty()) results["detection"] = cb.extra;
  } else {
    throw InvalidInput("witness needs --observable or --flip-a/--flip-b");
  }

  if (!state.empty()) {
    report.inputs["state"] = input_entry(state);
    const CMat m = io::matrix_from_json(io::load_json_file(state));
    const DensityOperator rho =
        m.cols() == 1
            ? DensityOperator::from_pure(PureState::from_vector(m.col(0)))
            : DensityOperator::from_matrix(m);
    if (rho.matrix().rows() != l.rows())
      throw InvalidInput("observable and state dimensions differ");
    WitnessBounds b;
    const Json& jb = results["bounds"];
    b.g_max = jb["g_max"];
    b.g_min = jb["g_min"];
    b.gs_max = jb["gs_max"];
    b.gs_min = jb["gs_min"];
    b.gme_max = jb["gme_max"];
    b.gme_min = jb["gme_min"];
    append_verdict(results, verdict(l, rho, b));
  }
  report.results = results;
  emit_report(report, opts, true);
  return 0;
}

// Radius of each named surface along a unit direction in the positive
// hyperoctant.
double surface_radius(const std::string& id, const RVec& dir) {
  const int d = static_cast<int>(dir.size());
  if (id == "sphere") return 1.0;
  if (id == "octahedron") return 1.0 / dir.lpNorm<1>();
  if (id == "cube")
    return 1.0 / (std::sqrt(double(d)) * dir.lpNorm<Eigen::Infinity>());
  if (id == "sep_witness") {
    const double inf = dir.lpNorm<Eigen::Infinity>();
    return inf * inf;
  }
  const double one = dir.lpNorm<1>();
  return one * one / d;  // me_witness
}

int cmd_geometry(int d, int resolution, const CommonOptions& opts) {
  if (d < 2) throw InvalidInput("geometry: d must be at least 2");
  if (resolution < 2) throw InvalidInput("geometry: resolution must be >= 2");

  std::vector<RVec> directions;
  if (d == 2) {
    for (int i = 0; i < resolution; ++i) {
      const double angle =
          0.5 * std::numbers::pi * double(i) / double(resolution - 1);
      RVec dir(2);
      dir << std::cos(angle), std::sin(angle);
      directions.push_back(dir);
    }
  } else if (d == 3) {
    for (int i = 0; i < resolution; ++i)
      for (int j = 0; j < resolution; ++j) {
        const double theta =
            0.5 * std::numbers::pi * double(i) / double(resolution - 1);
        const double phi =
            0.5 * std::numbers::pi * double(j) / double(resolution - 1);
        RVec dir(3);
        dir << std::sin(theta) * std::cos(phi),
            std::sin(theta) * std::sin(phi), std::cos(theta);
        directions.push_back(dir);
      }
  } else {
    // Norms table only: hyperoctant vertices plus seeded random directions.
    RVec axis = RVec::Zero(d);
    axis(0) = 1.0;
    directions.push_back(axis);
    directions.push_back(RVec::Constant(d, 1.0 / std::sqrt(double(d))));
    std::mt19937_64 gen(opts.seed);
    for (int i = 0; i < resolution; ++i) {
      RVec dir(d);
      for (int k = 0; k < d; ++k)
        dir(k) = double(gen() >> 11) * 0x1.0p-53;
      directions.push_back(dir / dir.norm());
    }
  }

  const std::vector<std::string> surfaces{"sphere", "octahedron", "cube",
                                          "sep_witness", "me_witness"};
  std::filesystem::create_directories(opts.out_dir.empty() ? "."
                                                           : opts.out_dir);
  const std::string base = (opts.out_dir.empty() ? "." : opts.out_dir) +
                           "/geometry_d" + std::to_string(d);
  std::string out_path;
  int n_points = 0;
  if (opts.format == "csv") {
    out_path = base + ".csv";
    std::ofstream out(out_path);
    if (!out) throw InvalidInput("cannot open output file: " + out_path);
    for (int k = 0; k < d; ++k) out << "sigma_" << k << ",";
    out << "radius,surface_id\n";
    char buf[32];
    for (const RVec& dir : directions)
      for (const std::string& id : surfaces) {
        for (int k = 0; k < d; ++k) {
          std::snprintf(buf, sizeof buf, "%.17g", dir(k));
          out << buf << ",";
        }
        std::snprintf(buf, sizeof buf, "%.17g", surface_radius(id, dir));
        out << buf << "," << id << "\n";
        ++n_points;
      }
  } else {
    out_path = base + ".json";
    Json points = Json::array();
    for (const RVec& dir : directions)
      for (const std::string& id : surfaces) {
        points.push_back(Json{{"sigma", real_vector_to_json(dir)},
                              {"radius", surface_radius(id, dir)},
                              {"surface_id", id}});
        ++n_points;
      }
    io::write_json_file(out_path, Json{{"d", d}, {"points", points}});
  }

  io::Report report;
  report.command = "geometry";
  report.results = Json{{"d", d},
                        {"resolution", resolution},
                        {"surfaces", surfaces},
                        {"points", n_points},
                        {"file", out_path}};
  emit_report(report, opts, false);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Witness bounds for random unitary and random projective "
               "channels and their Choi states"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string input, observable, state, flip_a, flip_b;
  int d = 2, resolution = 64;

  auto add_common = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--seed", opts.seed, "Seed for randomized paths")
        ->default_val(0);
    sub->add_option("--restarts", opts.restarts, "Optimizer restarts")
        ->default_val(32);
    sub->add_option("--tolerance", opts.tolerance,
                    "Classification / exclusion tolerance")
        ->default_val(tol::classify);
    sub->add_option("--out", opts.out_dir, "Output directory");
    if (with_format)
      sub->add_option("--format", opts.format, "Output format")
          ->check(CLI::IsMember({"json", "csv"}))
          ->default_val("csv");
  };

  CLI::App* analyze =
      app.add_subcommand("analyze-state",
                         "Schmidt/complementary analysis of a pure state or "
                         "unitality and verdicts for a mixed one");
  analyze->add_option("--input", input, "State file (JSON matrix or vector)")
      ->required();
  analyze->add_option("--observable", observable,
                      "Witness observable for mixed input (JSON matrix)");
  add_common(analyze, false);

  CLI::App* classify = app.add_subcommand(
      "classify-channel", "Choi-based RU/RP exclusion for a Kraus channel");
  classify->add_option("--input", input, "Channel file (JSON)")->required();
  classify->add_option("--observable", observable,
                       "Optional witness observable (JSON matrix)");
  add_common(classify, false);

  CLI::App* witness = app.add_subcommand(
      "witness", "Bounds for an observable, optionally with a verdict");
  witness->add_option("--observable", observable,
                      "Observable file (JSON matrix)");
  witness->add_option("--flip-a", flip_a, "Flip-type factor A (JSON matrix)");
  witness->add_option("--flip-b", flip_b, "Flip-type factor B (JSON matrix)");
  witness->add_option("--state", state, "Optional state file for a verdict");
  add_common(witness, false);

  CLI::App* geometry = app.add_subcommand(
      "geometry", "Export the norm-ball and witness surfaces as point clouds");
  geometry->add_option("--d", d, "Local dimension")->required();
  geometry->add_option("--resolution", resolution, "Angular resolution")
      ->default_val(64);
  add_common(geometry, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return cmd_analyze_state(input, observable, opts);
    if (*classify) return cmd_classify_channel(input, observable, opts);
    if (*witness) return cmd_witness(observable, flip_a, flip_b, state, opts);
    if (*geometry) return cmd_geometry(d, resolution, opts);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
