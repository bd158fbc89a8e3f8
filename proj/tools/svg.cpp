#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "gldp/common.hpp"

namespace gldp::cli {

namespace {

constexpr int kWidth = 640, kHeight = 420;
constexpr int kLeft = 64, kRight = 24, kTop = 36, kBottom = 48;

const char* kPalette[6] = {"#1f77b4", "#d62728", "#2ca02c",
                           "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void write_line_plot(const std::filesystem::path& path,
                     const std::string& title, const std::string& x_label,
                     const std::string& y_label,
                     const std::vector<Series>& series, bool log_y) {
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const Series& s : series)
    for (auto [x, y] : s.points) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      double yy = log_y ? (y > 0.0 ? std::log10(y) : y_min) : y;
      if (log_y && y <= 0.0) continue;
      y_min = std::min(y_min, yy);
      y_max = std::max(y_max, yy);
    }
  if (!(x_min < x_max)) x_max = x_min + 1.0;
  if (!(y_min < y_max)) {
    if (!std::isfinite(y_min)) {
      y_min = 0.0;
      y_max = 1.0;
    } else {
      y_max = y_min + 1.0;
    }
  }

  auto px = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * (kWidth - kLeft - kRight);
  };
  auto py = [&](double y) {
    double yy = log_y ? std::log10(std::max(y, 1e-300)) : y;
    yy = std::clamp(yy, y_min, y_max);
    return kHeight - kBottom -
           (yy - y_min) / (y_max - y_min) * (kHeight - kTop - kBottom);
  };

  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot write '" + path.string() + "'");
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
    << "\" height=\"" << kHeight << "\">\n";
  f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  f << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" "
       "font-family=\"sans-serif\" font-size=\"14\">"
    << title << "</text>\n";

  // axes
  f << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
    << kWidth - kRight << "\" y2=\"" << kHeight - kBottom
    << "\" stroke=\"black\"/>\n";
  f << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
    << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";

  for (int t = 0; t <= 4; ++t) {
    double xv = x_min + (x_max - x_min) * t / 4.0;
    double yv = y_min + (y_max - y_min) * t / 4.0;
    f << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << kHeight - kBottom + 18
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"11\">"
      << fmt(xv) << "</text>\n";
    double y_shown = log_y ? std::pow(10.0, yv) : yv;
    f << "<text x=\"" << kLeft - 6 << "\" y=\""
      << fmt(kHeight - kBottom -
             (kHeight - kTop - kBottom) * t / 4.0 + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"11\">"
      << fmt(y_shown) << "</text>\n";
  }
  f << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\""
    << kHeight - 8
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"12\">"
    << x_label << "</text>\n";
  f << "<text x=\"16\" y=\"" << (kTop + kHeight - kBottom) / 2
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
       "transform=\"rotate(-90 16 "
    << (kTop + kHeight - kBottom) / 2 << ")\">" << y_label << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % 6];
    f << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\" points=\"";
    for (auto [x, y] : series[s].points)
      f << fmt(px(x)) << "," << fmt(py(y)) << " ";
    f << "\"/>\n";
    f << "<text x=\"" << kWidth - kRight - 8 << "\" y=\""
      << kTop + 16 * (int(s) + 1)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
         "fill=\""
      << color << "\">" << series[s].label << "</text>\n";
  }
  f << "</svg>\n";
}

}  // namespace gldp::cli
