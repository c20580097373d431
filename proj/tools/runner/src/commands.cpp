#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "ghzq/cli/runner.hpp"
#include "ghzq/decoherence.hpp"
#include "ghzq/estimators.hpp"
#include "ghzq/oracle.hpp"
#include "ghzq/qfunction.hpp"
#include "ghzq/sampler.hpp"

namespace ghzq::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kArdehaliRule =
    "F = |<A>| read along the direction of the sample mean; s_j = +1 for all j, "
    "theta_j = 0 except theta_m = -pi/4, phi = pi";
constexpr const char* kMerminRule = "F = -Im<A>; s_j = +1, theta_j = 0, phi = -pi/2";

std::string format_name(Format f) { return f == Format::Csv ? "csv" : "json"; }

ojson common_json(const CommonConfig& cfg) {
  ojson j;
  j["m"] = cfg.m;
  j["convention"] = cfg.convention;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  j["out"] = cfg.out ? cfg.out->string() : std::string("-");
  j["format"] = format_name(cfg.format);
  return j;
}

ojson base_metadata(const char* command, const ojson& config, std::uint64_t seed) {
  ojson md;
  md["tool"] = "ghzq";
  md["version"] = GHZQ_VERSION;
  md["command"] = command;
  md["config"] = config;
  md["seed"] = seed;
  md["row_seed"] = "seed + m";
  md["ardehali_extraction"] = kArdehaliRule;
  md["mermin_extraction"] = kMerminRule;
  return md;
}

std::vector<BellSetup> setups_for(const std::vector<int>& ms, ConventionFamily family) {
  std::vector<BellSetup> out;
  for (int m : ms) {
    if (m > kMaxQubits) throw ConfigError(fmt::format("m = {} exceeds the cap {}", m, kMaxQubits));
    try {
      out.push_back(convention_for(m, family));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(fmt::format("m = {}: {}", m, e.what()));
    }
  }
  return out;
}

std::uint64_t row_seed(std::uint64_t seed, int m) { return seed + static_cast<std::uint64_t>(m); }

}  // namespace

ConventionFamily parse_family(const std::string& name) {
  if (name == "auto") return ConventionFamily::Auto;
  if (name == "mermin") return ConventionFamily::Mermin;
  if (name == "ardehali") return ConventionFamily::Ardehali;
  throw ConfigError("unknown convention '" + name + "'");
}

CommandOutput cmd_bell_sweep(const CommonConfig& cfg) {
  for (int m : cfg.m) {
    if (m < 2) throw ConfigError("bell-sweep needs m >= 2");
  }
  const auto setups = setups_for(cfg.m, parse_family(cfg.convention));

  CommandOutput res;
  res.doc.metadata = base_metadata("bell-sweep", common_json(cfg), cfg.seed);
  res.doc.table.columns = {"m",     "convention",   "samples",   "f_value",
                           "f_stderr", "f_qm",      "ratio",     "ratio_stderr",
                           "lhv_ratio", "genuine_threshold", "seed"};
  for (const auto& setup : setups) {
    const int m = setup.state.qubits();
    const auto seed = row_seed(cfg.seed, m);
    const auto run = simulate_bell(setup, {cfg.samples, seed, cfg.workers});
    const auto& b = run.bell;
    res.doc.table.rows.push_back({std::int64_t{m},
                                  std::string(to_string(setup.convention.label())),
                                  cfg.samples, b.f_value, b.f_stderr, b.f_qm, b.ratio,
                                  b.ratio_stderr, lhv_bound_ratio(m, setup.convention),
                                  kGenuineThreshold, seed});
  }
  return res;
}

CommandOutput cmd_scaling(const CommonConfig& cfg) {
  const std::set<int> distinct(cfg.m.begin(), cfg.m.end());
  if (distinct.size() < 3) throw ConfigError("scaling needs at least three distinct m values");
  setups_for(cfg.m, parse_family(cfg.convention));

  const auto study =
      scaling_study(cfg.m, parse_family(cfg.convention), cfg.samples, cfg.seed, cfg.workers);

  CommandOutput res;
  res.doc.metadata = base_metadata("scaling", common_json(cfg), cfg.seed);
  res.doc.table.columns = {"m", "rel_err_F", "rel_err_N", "samples", "seed"};
  ojson n_uncertainty = ojson::array();
  for (const auto& r : study.rows) {
    res.doc.table.rows.push_back(
        {std::int64_t{r.m}, r.rel_err_f, r.rel_err_n, cfg.samples, row_seed(cfg.seed, r.m)});
    n_uncertainty.push_back({{"m", r.m}, {"rel_err_N_rel_uncertainty", r.rel_err_n_uncertainty}});
  }

  const auto& fit = study.log2_rel_err_f_fit;
  const double dof = static_cast<double>(study.rows.size()) - 2.0;
  const boost::math::students_t t(dof);
  const double tq = boost::math::quantile(boost::math::complement(t, 0.025));
  ojson fit_json;
  fit_json["model"] = "log2(rel_err_F) = intercept + slope * m";
  fit_json["slope"] = fit.slope;
  fit_json["slope_stderr"] = fit.slope_stderr;
  fit_json["intercept"] = fit.intercept;
  fit_json["intercept_stderr"] = fit.intercept_stderr;
  fit_json["confidence"] = 0.95;
  fit_json["degrees_of_freedom"] = dof;
  fit_json["slope_ci"] = {fit.slope - tq * fit.slope_stderr, fit.slope + tq * fit.slope_stderr};
  fit_json["reference_slope_two_pow_m_over_3"] = 1.0 / 3.0;
  fit_json["reference_slope_second_moment"] = std::log2(std::sqrt(6.0) / 2.0);

  res.doc.metadata["fit"] = fit_json;
  ojson sidecar;
  sidecar["metadata"] = res.doc.metadata;
  sidecar["metadata"].erase("fit");
  sidecar["fit"] = fit_json;
  sidecar["rel_err_N_uncertainty"] = n_uncertainty;
  res.sidecar = std::move(sidecar);
  return res;
}

CommandOutput cmd_scatter(const ScatterConfig& cfg) {
  if (cfg.common.m.size() != 1) throw ConfigError("scatter takes a single m");
  const auto setup = setups_for(cfg.common.m, parse_family(cfg.common.convention)).front();
  const auto m = static_cast<std::size_t>(setup.state.qubits());
  if (cfg.qubit_a >= m || cfg.qubit_b >= m || cfg.qubit_a == cfg.qubit_b) {
    throw ConfigError(fmt::format("qubits must be two distinct indices below m = {}", m));
  }
  if (cfg.row_limit == 0) throw ConfigError("row limit must be positive");

  const auto seed = row_seed(cfg.common.seed, setup.state.qubits());
  const auto run = simulate_scatter(setup, {cfg.common.samples, seed, cfg.common.workers},
                                    cfg.qubit_a, cfg.qubit_b, cfg.row_limit);

  ojson config = common_json(cfg.common);
  config["qubits"] = {cfg.qubit_a, cfg.qubit_b};
  config["rows"] = cfg.row_limit;

  CommandOutput res;
  res.doc.metadata = base_metadata("scatter", config, cfg.common.seed);
  ojson moments;
  moments["variables"] = {"factor_a", "factor_b", "term_xx", "term_yy"};
  moments["count"] = run.moments.count();
  ojson mean = ojson::array();
  ojson cov = ojson::array();
  for (std::size_t i = 0; i < 4; ++i) {
    mean.push_back(run.moments.mean(i));
    ojson row = ojson::array();
    for (std::size_t j = 0; j < 4; ++j) row.push_back(run.moments.covariance(i, j));
    cov.push_back(row);
  }
  moments["mean"] = mean;
  moments["covariance"] = cov;
  res.doc.metadata["moments"] = moments;
  res.doc.metadata["proposals"] = run.proposals;
  res.doc.metadata["stream_seed"] = seed;

  res.doc.table.columns = {"index", "factor_a", "factor_b", "term_xx", "term_yy"};
  for (const auto& r : run.rows) {
    res.doc.table.rows.push_back({r.index, r.factor_a, r.factor_b, r.term_xx, r.term_yy});
  }
  return res;
}

CommandOutput cmd_decoherence(const DecoherenceConfig& cfg) {
  const NoiseSpec probe{cfg.epsilon, cfg.steps, 0};
  try {
    probe.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto setups = setups_for(cfg.common.m, parse_family(cfg.common.convention));

  ojson config = common_json(cfg.common);
  config["epsilon"] = cfg.epsilon;
  config["steps"] = cfg.steps;

  CommandOutput res;
  res.doc.metadata = base_metadata("decoherence", config, cfg.common.seed);
  res.doc.table.columns = {"m", "tau", "f_ratio", "stderr", "analytic_ratio"};

  std::vector<DecayCurve> curves;
  ojson rates = ojson::array();
  for (const auto& setup : setups) {
    const int m = setup.state.qubits();
    const NoiseSpec noise{cfg.epsilon, cfg.steps, row_seed(cfg.common.seed, m)};
    curves.push_back(decay_curve(setup, noise, cfg.common.samples, cfg.common.workers));
    for (const auto& p : curves.back().points) {
      res.doc.table.rows.push_back(
          {std::int64_t{m}, std::int64_t{p.tau}, p.f_ratio, p.stderr_ratio, p.analytic_ratio});
    }
    rates.push_back({{"m", m},
                     {"rate", fit_decay_rate(curves.back())},
                     {"analytic_rate", 0.5 * cfg.epsilon * cfg.epsilon * m * m}});
  }
  res.doc.metadata["decay_rates"] = rates;

  std::set<int> distinct(cfg.common.m.begin(), cfg.common.m.end());
  const bool fit_ok = distinct.size() >= 2 &&
                      std::all_of(curves.begin(), curves.end(), [](const DecayCurve& c) {
                        const double r = fit_decay_rate(c);
                        return std::isfinite(r) && r > 0.0;
                      });
  if (fit_ok) {
    const auto fit = fit_rate_exponent(curves);
    res.doc.metadata["rate_exponent"] = {{"slope", fit.slope}, {"stderr", fit.slope_stderr}};
  }
  return res;
}

CommandOutput cmd_oracle_check(const CommonConfig& cfg) {
  if (cfg.m.size() != 1) throw ConfigError("oracle-check takes a single cap value for --m");
  const int cap = cfg.m.front();
  if (cap > kOracleMaxQubits) {
    throw ConfigError(fmt::format("oracle cap must be <= {}", kOracleMaxQubits));
  }

  CommandOutput res;
  res.doc.metadata = base_metadata("oracle-check", common_json(cfg), cfg.seed);
  res.doc.table.columns = {"check", "m", "value", "expected", "tolerance", "status"};
  std::string& report = res.report;
  report += fmt::format("{:<20} {:>3} {:>16} {:>16} {:>12}  {}\n", "check", "m", "value",
                        "expected", "tolerance", "status");

  auto record = [&](const char* name, int m, double value, double expected, double tol) {
    const bool pass = std::isfinite(value) && std::abs(value - expected) <= tol;
    res.ok = res.ok && pass;
    const char* status = pass ? "PASS" : "FAIL";
    res.doc.table.rows.push_back(
        {std::string(name), std::int64_t{m}, value, expected, tol, std::string(status)});
    report += fmt::format("{:<20} {:>3} {:>16.9g} {:>16.9g} {:>12.3g}  {}\n", name, m, value,
                          expected, tol, status);
  };

  for (int m = 1; m <= cap; ++m) {
    const auto setup = convention_for(m, ConventionFamily::Auto);
    const auto exact = oracle_bell_value(setup.state, setup.convention);
    const double scale = std::ldexp(1.0, m - 1);
    record("f_closed_form", m, f_qm_closed_form(setup.state, setup.convention), exact.f,
           1e-12 * scale);

    const auto seed = row_seed(cfg.seed, m);
    const auto run = simulate_bell(setup, {cfg.samples, seed, cfg.workers});
    const auto& w = run.weights;
    record("moment_real", m, w.mean().real(), exact.expectation.real(),
           4.0 * w.standard_error_along({1.0, 0.0}));
    record("moment_imag", m, w.mean().imag(), exact.expectation.imag(),
           4.0 * w.standard_error_along({0.0, 1.0}));
    record("spin_up_total", m, run.spin_up.mean, oracle_spin_up_total(build_ghz(setup.state)),
           4.0 * run.spin_up.std_error);

    if (m <= 4) {
      double worst = 0.0;
      PhasePoint p(static_cast<std::size_t>(m));
      for (std::uint64_t k = 0; k < 1000; ++k) {
        CounterRng rng(seed, k, StreamTag::Thinning);
        propose_point(setup.state, rng, p);
        worst = std::max(worst, std::abs(q_density(setup.state, p) -
                                         oracle_q_density(setup.state, p)));
      }
      record("density_overlap", m, worst, 0.0, 1e-12);
    }
    if (m <= 3) {
      const int res_q = m == 3 ? 12 : 24;
      record("quadrature_mass", m, q_density_quadrature_check(setup.state, res_q), 1.0, 1e-9);
      const auto q = oracle_q_moment_check(setup.state, setup.convention, res_q);
      record("quadrature_moment", m, std::abs(q - exact.expectation), 0.0, 1e-9 * scale);
    }
  }
  report += res.ok ? "all checks passed\n" : "some checks FAILED\n";
  return res;
}

}  // namespace ghzq::cli
