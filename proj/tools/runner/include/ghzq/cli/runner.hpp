#pragma once

// Command-line front end for the ghzq simulator.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ghzq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;

/// Invalid user configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "5", "3,5,7", "3:11:2" (inclusive start:stop[:step]) or any
/// comma-separated mix of those. Throws ConfigError.
std::vector<int> parse_m_list(std::string_view text);

/// Positive integer count, plain or in scientific notation ("1e6").
/// Throws ConfigError for zero, fractional or out-of-range values.
std::uint64_t parse_count(std::string_view text);

/// Runs one command line; args excludes the program name. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ghzq::cli
