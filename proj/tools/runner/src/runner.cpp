#include "ghzq/cli/runner.hpp"

#include <charconv>
#include <exception>
#include <ostream>
#include <utility>

#include <CLI11.hpp>

#include "commands.hpp"

namespace ghzq::cli {

namespace {

struct RawCommon {
  std::string m;
  std::string convention = "auto";
  std::string samples;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* sub, RawCommon& raw, const std::string& m_default,
                const std::string& samples_default) {
  raw.m = m_default;
  raw.samples = samples_default;
  sub->add_option("--m", raw.m, "qubit count(s): 5, 3,5,7 or start:stop[:step]")
      ->capture_default_str();
  sub->add_option("--convention", raw.convention, "mermin, ardehali or auto")
      ->check(CLI::IsMember({"mermin", "ardehali", "auto"}))
      ->capture_default_str();
  sub->add_option("--samples", raw.samples, "samples per m (1e6 accepted)")
      ->capture_default_str();
  sub->add_option("--seed", raw.seed, "base seed")->capture_default_str();
  sub->add_option("--workers", raw.workers, "worker threads, 0 = all cores")
      ->capture_default_str();
  sub->add_option("--out", raw.out, "output file (stdout when omitted)");
  sub->add_option("--format", raw.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

CommonConfig resolve(const RawCommon& raw) {
  CommonConfig cfg;
  cfg.m_text = raw.m;
  cfg.m = parse_m_list(raw.m);
  cfg.convention = raw.convention;
  cfg.samples = parse_count(raw.samples);
  cfg.seed = raw.seed;
  cfg.workers = raw.workers;
  if (!raw.out.empty()) cfg.out = raw.out;
  cfg.format = raw.format == "json" ? Format::Json : Format::Csv;
  return cfg;
}

std::pair<std::size_t, std::size_t> parse_qubit_pair(const std::string& text) {
  const auto comma = text.find(',');
  std::size_t a = 0, b = 0;
  bool ok = comma != std::string::npos;
  if (ok) {
    const char* end = text.data() + text.size();
    const auto ra = std::from_chars(text.data(), text.data() + comma, a);
    const auto rb = std::from_chars(text.data() + comma + 1, end, b);
    ok = ra.ec == std::errc{} && ra.ptr == text.data() + comma && rb.ec == std::errc{} &&
         rb.ptr == end;
  }
  if (!ok) throw ConfigError("--qubits takes two zero-based indices a,b; got '" + text + "'");
  return {a, b};
}

std::filesystem::path sidecar_path(std::filesystem::path p) {
  return p.replace_extension(".fit.json");
}

void emit(const CommonConfig& cfg, const CommandOutput& res, std::ostream& out) {
  const std::string body = render(res.doc, cfg.format);
  if (cfg.out) {
    if (res.sidecar) write_atomically(sidecar_path(*cfg.out), res.sidecar->dump(2) + "\n");
    write_atomically(*cfg.out, body);
    if (!res.report.empty()) out << res.report;
  } else if (!res.report.empty()) {
    out << res.report;
  } else {
    out << body;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"GHZ-state SU(2)-Q phase-space simulator", "ghzq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(GHZQ_VERSION));

  RawCommon bell, scaling, scatter, decoherence, oracle;
  std::string qubits = "0,1";
  std::string rows = "10000";
  double epsilon = 0.1;
  int steps = 30;

  auto* bell_cmd = app.add_subcommand("bell-sweep", "normalized Bell violation against m");
  add_common(bell_cmd, bell, "3:11:2", "1e6");
  auto* scaling_cmd = app.add_subcommand("scaling", "relative errors of F and N against m");
  add_common(scaling_cmd, scaling, "4:24", "1e6");
  auto* scatter_cmd = app.add_subcommand("scatter", "per-sample factors for two qubits");
  add_common(scatter_cmd, scatter, "2", "1e5");
  scatter_cmd->add_option("--qubits", qubits, "two qubit indices a,b")->capture_default_str();
  scatter_cmd->add_option("--rows", rows, "row cap (reservoir thinning)")->capture_default_str();
  auto* deco_cmd = app.add_subcommand("decoherence", "decay of F under collective dephasing");
  add_common(deco_cmd, decoherence, "2,3,4,6", "1e5");
  deco_cmd->add_option("--epsilon", epsilon, "noise strength per step")->capture_default_str();
  deco_cmd->add_option("--steps", steps, "number of noise steps")->capture_default_str();
  auto* oracle_cmd = app.add_subcommand("oracle-check", "sampler vs exact reference for m <= cap");
  add_common(oracle_cmd, oracle, "8", "1e5");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    if (bell_cmd->parsed()) {
      const auto cfg = resolve(bell);
      emit(cfg, cmd_bell_sweep(cfg), out);
    } else if (scaling_cmd->parsed()) {
      const auto cfg = resolve(scaling);
      emit(cfg, cmd_scaling(cfg), out);
    } else if (scatter_cmd->parsed()) {
      ScatterConfig cfg;
      cfg.common = resolve(scatter);
      const auto [a, b] = parse_qubit_pair(qubits);
      cfg.qubit_a = a;
      cfg.qubit_b = b;
      cfg.row_limit = parse_count(rows);
      emit(cfg.common, cmd_scatter(cfg), out);
    } else if (deco_cmd->parsed()) {
      DecoherenceConfig cfg;
      cfg.common = resolve(decoherence);
      cfg.epsilon = epsilon;
      cfg.steps = steps;
      emit(cfg.common, cmd_decoherence(cfg), out);
    } else if (oracle_cmd->parsed()) {
      const auto cfg = resolve(oracle);
      const auto res = cmd_oracle_check(cfg);
      emit(cfg, res, out);
      return res.ok ? kExitOk : kExitInternal;
    }
  } catch (const ConfigError& e) {
    err << "ghzq: invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "ghzq: error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace ghzq::cli
