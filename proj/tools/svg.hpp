#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace gldp::cli {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

// Fixed-size line plot regenerated from CSV data; derived artifact only.
// log_y switches the vertical axis to log10 (nonpositive values are
// dropped from the range and clamped in the drawing).
void write_line_plot(const std::filesystem::path& path,
                     const std::string& title, const std::string& x_label,
                     const std::string& y_label,
                     const std::vector<Series>& series, bool log_y = false);

}  // namespace gldp::cli
