#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace nanbu::harness {

/// A numeric table; every cell is printed with 17 significant digits.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string format_number(double v);
std::string to_csv(const Table& table);

/// Writes `contents` to `path` via a temporary file and rename. Throws
/// IoError naming the path on failure.
void write_atomically(const std::string& path, const std::string& contents);

/// Writes the CSV at `path` and the metadata at `path + ".json"`.
void emit_report(const Table& table, const nlohmann::json& metadata, const std::string& path);

/// Parses CSV produced by to_csv.
Table parse_csv(const std::string& text);

/// Version string baked in at configure time (git describe when available).
std::string version_string();

}  // namespace nanbu::harness
