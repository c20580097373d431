#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace ghzq::cli {

enum class Format { Csv, Json };

using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// A result document: metadata header plus one table.
struct Document {
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
  Table table;
};

std::string render(const Document& doc, Format format);

/// Writes to a temporary sibling and renames it into place.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace ghzq::cli
