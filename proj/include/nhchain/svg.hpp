#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace nhchain::svg {

struct Series {
  std::vector<double> x, y;
  std::string color = "#1f77b4";
  bool scatter = false; // circles instead of a polyline
};

/// Minimal static line/scatter plot with axes and labels. Output is plain
/// SVG with one <path> or circle group per series, so tests can assert on
/// element counts.
class Plot {
 public:
  Plot(std::string title, std::string x_label, std::string y_label);
  void add(Series series);
  void write(const std::filesystem::path& path) const;

 private:
  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
};

}  // namespace nhchain::svg
