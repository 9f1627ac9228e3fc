#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace semigrav::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
};

// Static line plot with axes, ticks and a legend. Non-finite points split lines.
void write_svg(std::ostream& os, const Plot& plot);

}  // namespace semigrav::cli
