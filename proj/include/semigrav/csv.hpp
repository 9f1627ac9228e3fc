#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace semigrav::csv {

// 17 significant digits, enough to round-trip any double.
std::string format(double v);

// Throws ConfigError unless the whole string is a number.
double parse(std::string_view text);

class Writer {
 public:
  Writer(std::ostream& os, std::vector<std::string> header);

  Writer& cell(double v);
  Writer& cell(std::string_view text);
  void end_row();
  void row(std::initializer_list<double> values);

 private:
  std::ostream& os_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

// Splits a line on commas; no quoting.
std::vector<std::string> split(std::string_view line);

}  // namespace semigrav::csv
