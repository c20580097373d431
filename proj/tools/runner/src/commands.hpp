#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ghzq/model.hpp"
#include "output.hpp"

namespace ghzq::cli {

struct CommonConfig {
  std::vector<int> m;
  std::string m_text;
  std::string convention = "auto";
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::optional<std::filesystem::path> out;
  Format format = Format::Csv;
};

struct ScatterConfig {
  CommonConfig common;
  std::size_t qubit_a = 0;
  std::size_t qubit_b = 1;
  std::size_t row_limit = 10000;
};

struct DecoherenceConfig {
  CommonConfig common;
  double epsilon = 0.1;
  int steps = 30;
};

ConventionFamily parse_family(const std::string& name);

/// Result of a command: the main document and any extra files.
struct CommandOutput {
  Document doc;
  std::optional<nlohmann::ordered_json> sidecar;
  std::string report;  // human-readable text for the console
  bool ok = true;
};

CommandOutput cmd_bell_sweep(const CommonConfig& cfg);
CommandOutput cmd_scaling(const CommonConfig& cfg);
CommandOutput cmd_scatter(const ScatterConfig& cfg);
CommandOutput cmd_decoherence(const DecoherenceConfig& cfg);
CommandOutput cmd_oracle_check(const CommonConfig& cfg);

}  // namespace ghzq::cli
