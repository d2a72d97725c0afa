#pragma once

#include <string>
#include <vector>

namespace starkspec {

// Minimal CSV for the numeric artifact tables: no quoting, comma separator,
// first row is the header. Doubles render via the shortest round-trip form.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

std::string format_double(double v);
double parse_double(const std::string& s);

std::string to_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);

// Write-to-temp-then-rename so partially written artifacts never appear.
void atomic_write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace starkspec
