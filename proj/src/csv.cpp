#include "casimir/csv.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace casimir {

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp + "'");
    out << content;
    out.flush();
    if (!out) throw Error("short write to '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename '" + tmp + "' to '" + path + "': " +
                ec.message());
  }
}

void write_csv(const std::string& path, const CsvTable& table) {
  if (table.header.empty()) throw Error("csv: empty header");
  std::ostringstream out;
  for (const auto& [key, value] : table.metadata) {
    out << "# " << key << " = " << value << "\n";
  }
  for (size_t i = 0; i < table.header.size(); ++i) {
    out << (i ? "," : "") << table.header[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      throw Error("csv: row width differs from header");
    }
    for (size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_number(row[i]);
    }
    out << "\n";
  }
  write_file_atomic(path, out.str());
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const size_t eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        std::string value = line.substr(eq + 1);
        const auto trim = [](std::string& s) {
          const size_t b = s.find_first_not_of(' ');
          const size_t e = s.find_last_not_of(' ');
          s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
        };
        trim(key);
        trim(value);
        table.metadata.emplace_back(key, value);
      }
      continue;
    }
    if (!header_seen) {
      table.header = split_commas(line);
      header_seen = true;
      continue;
    }
    const auto cells = split_commas(line);
    if (cells.size() != table.header.size()) {
      throw Error("csv: row width differs from header in '" + path + "'");
    }
    std::vector<double> row(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
      const char* begin = cells[i].c_str();
      char* end = nullptr;
      row[i] = std::strtod(begin, &end);
      if (end == begin || *end != '\0') {
        throw Error("csv: bad number '" + cells[i] + "' in '" + path + "'");
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (!header_seen) throw Error("csv: no header in '" + path + "'");
  return table;
}

}  // namespace casimir
