#pragma once

#include <string>
#include <vector>

#include "casimir/config.hpp"

namespace casimir {

// Rectangular numeric table with `# key = value` metadata lines.  Numbers
// are written with 17 significant digits, so a read-back reproduces the
// stored doubles bit for bit.
struct CsvTable {
  MetadataList metadata;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Write-to-temp-then-rename; the target never holds a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

}  // namespace casimir
