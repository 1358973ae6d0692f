#include "nanbu/harness/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nanbu/errors.hpp"

namespace nanbu::harness {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t k = 0; k < table.header.size(); ++k) {
    out += (k ? "," : "") + table.header[k];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      out += (k ? "," : "") + format_number(row[k]);
    }
    out += '\n';
  }
  return out;
}

void write_atomically(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open '" + tmp + "' for writing");
    }
    out << contents;
    out.flush();
    if (!out) {
      throw IoError("write failed for '" + tmp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path + "'");
  }
}

void emit_report(const Table& table, const nlohmann::json& metadata, const std::string& path) {
  write_atomically(path, to_csv(table));
  write_atomically(path + ".json", metadata.dump(2) + "\n");
}

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  auto cells = [](const std::string& l) {
    std::vector<std::string> out;
    std::stringstream ss(l);
    for (std::string c; std::getline(ss, c, ',');) {
      out.push_back(c);
    }
    return out;
  };
  if (std::getline(in, line)) {
    t.header = cells(line);
  }
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells(line)) {
      row.push_back(std::stod(c));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string version_string() { return NANBU_VERSION_STRING; }

}  // namespace nanbu::harness
