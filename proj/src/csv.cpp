#include "semigrav/csv.hpp"

#include <charconv>
#include <cmath>

#include "semigrav/errors.hpp"

namespace semigrav::csv {

std::string format(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ConfigError("not a number: '" + std::string(text) + "'");
  return v;
}

Writer::Writer(std::ostream& os, std::vector<std::string> header) : os_(os), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

Writer& Writer::cell(double v) { return cell(format(v)); }

Writer& Writer::cell(std::string_view text) {
  if (filled_ == columns_) throw Error("csv: too many cells in row");
  os_ << (filled_ ? "," : "") << text;
  ++filled_;
  return *this;
}

void Writer::end_row() {
  if (filled_ != columns_) throw Error("csv: row has " + std::to_string(filled_) + " of " +
                                       std::to_string(columns_) + " cells");
  os_ << '\n';
  filled_ = 0;
}

void Writer::row(std::initializer_list<double> values) {
  for (double v : values) cell(v);
  end_row();
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace semigrav::csv
