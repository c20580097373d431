#include <charconv>
#include <cmath>
#include <string>

#include "ghzq/cli/runner.hpp"

namespace ghzq::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view whole) {
  s = trim(s);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("bad qubit list '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

std::vector<int> parse_m_list(std::string_view text) {
  std::vector<int> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (item.empty()) throw ConfigError("bad qubit list '" + std::string(text) + "'");

    const auto c1 = item.find(':');
    if (c1 == std::string_view::npos) {
      out.push_back(parse_int(item, text));
    } else {
      const auto c2 = item.find(':', c1 + 1);
      const int start = parse_int(item.substr(0, c1), text);
      const int stop = parse_int(item.substr(c1 + 1, c2 == std::string_view::npos
                                                         ? std::string_view::npos
                                                         : c2 - c1 - 1),
                                 text);
      const int step = c2 == std::string_view::npos ? 1 : parse_int(item.substr(c2 + 1), text);
      if (step <= 0 || stop < start) {
        throw ConfigError("bad range '" + std::string(item) + "': need start <= stop, step > 0");
      }
      for (int m = start; m <= stop; m += step) out.push_back(m);
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  for (int m : out) {
    if (m < 1) throw ConfigError("qubit counts must be >= 1");
  }
  return out;
}

std::uint64_t parse_count(std::string_view text) {
  const std::string s(trim(text));
  std::uint64_t exact = 0;
  const auto [iptr, iec] = std::from_chars(s.data(), s.data() + s.size(), exact);
  if (!s.empty() && iec == std::errc{} && iptr == s.data() + s.size()) {
    if (exact == 0) throw ConfigError("count must be a positive integer, got '" + s + "'");
    return exact;
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("bad count '" + s + "'");
  }
  if (!std::isfinite(value) || value < 1.0 || value != std::floor(value) || value > 0x1p62) {
    throw ConfigError("count must be a positive integer, got '" + s + "'");
  }
  return static_cast<std::uint64_t>(value);
}

}  // namespace ghzq::cli
