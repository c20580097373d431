#include "output.hpp"

#include <fstream>
#include <random>
#include <stdexcept>
#include <system_error>

#include <fmt/format.h>

namespace ghzq::cli {

namespace {

std::string csv_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          return fmt::format("{}", v);
        }
      },
      cell);
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, cell);
}

std::string render_csv(const Document& doc) {
  std::string out;
  for (const auto& [key, value] : doc.metadata.items()) {
    out += "# " + key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  }
  for (std::size_t c = 0; c < doc.table.columns.size(); ++c) {
    if (c) out += ',';
    out += doc.table.columns[c];
  }
  out += '\n';
  for (const auto& row : doc.table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_cell(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Document& doc) {
  nlohmann::ordered_json j;
  j["metadata"] = doc.metadata;
  j["columns"] = doc.table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : doc.table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) r[doc.table.columns[c]] = json_cell(row[c]);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace

std::string render(const Document& doc, Format format) {
  return format == Format::Csv ? render_csv(doc) : render_json(doc);
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::random_device rd;
  const auto tmp = path.parent_path() /
                   fmt::format(".{}.tmp{:08x}", path.filename().string(), rd());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    f.close();
    if (!f) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw std::runtime_error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

}  // namespace ghzq::cli
