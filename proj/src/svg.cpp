#include "nhchain/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "nhchain/csv.hpp"
#include "nhchain/errors.hpp"

namespace nhchain::svg {

namespace {
constexpr double kWidth = 640, kHeight = 480;
constexpr double kMarginLeft = 70, kMarginRight = 20;
constexpr double kMarginTop = 40, kMarginBottom = 50;
}  // namespace

Plot::Plot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)) {}

void Plot::add(Series series) {
  if (series.x.size() != series.y.size())
    throw ConfigError("svg: series x/y length mismatch");
  series_.push_back(std::move(series));
}

void Plot::write(const std::filesystem::path& path) const {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Series& s : series_)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (!(xmin <= xmax)) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;

  auto px = [&](double x) {
    return kMarginLeft + (x - xmin) / (xmax - xmin) * (kWidth - kMarginLeft - kMarginRight);
  };
  auto py = [&](double y) {
    return kHeight - kMarginBottom -
           (y - ymin) / (ymax - ymin) * (kHeight - kMarginTop - kMarginBottom);
  };
  auto num = [](double v) { return csv::format_number(v); };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("svg: cannot open " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kHeight - kMarginBottom
      << "\" x2=\"" << kWidth - kMarginRight << "\" y2=\""
      << kHeight - kMarginBottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
      << kMarginLeft << "\" y2=\"" << kHeight - kMarginBottom
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" "
         "font-size=\"16\">" << title_ << "</text>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label_ << "</text>\n";
  out << "<text x=\"18\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << kHeight / 2 << ")\">" << y_label_ << "</text>\n";
  // axis range labels
  out << "<text x=\"" << kMarginLeft << "\" y=\"" << kHeight - kMarginBottom + 18
      << "\" font-size=\"11\">" << num(xmin) << "</text>\n";
  out << "<text x=\"" << kWidth - kMarginRight << "\" y=\""
      << kHeight - kMarginBottom + 18 << "\" text-anchor=\"end\" font-size=\"11\">"
      << num(xmax) << "</text>\n";
  out << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << kHeight - kMarginBottom
      << "\" text-anchor=\"end\" font-size=\"11\">" << num(ymin) << "</text>\n";
  out << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << kMarginTop + 4
      << "\" text-anchor=\"end\" font-size=\"11\">" << num(ymax) << "</text>\n";

  for (const Series& s : series_) {
    if (s.scatter) {
      out << "<g fill=\"" << s.color << "\">\n";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        out << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i]))
            << "\" r=\"2.5\"/>\n";
      }
      out << "</g>\n";
    } else {
      out << "<path fill=\"none\" stroke=\"" << s.color << "\" d=\"";
      bool pen_down = false;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
          pen_down = false;
          continue;
        }
        out << (pen_down ? 'L' : 'M') << num(px(s.x[i])) << ' ' << num(py(s.y[i]));
        pen_down = true;
      }
      out << "\"/>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace nhchain::svg
