#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace nhchain::csv {

/// One parsed CSV file: header row plus string cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const; // -1 if absent
  double number(std::size_t row, int col) const;
};

/// Shortest round-trip decimal representation; infinities as "inf"/"-inf".
std::string format_number(double value);
double parse_number(const std::string& text);

class Writer {
 public:
  explicit Writer(std::vector<std::string> header);
  void add_row(const std::vector<double>& values);
  void add_row(const std::vector<std::string>& cells);
  /// Comma-separated, LF endings, '.' decimal point, no quoting.
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

Table read(const std::filesystem::path& path);

}  // namespace nhchain::csv
