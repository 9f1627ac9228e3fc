#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "semigrav/csv.hpp"
#include "semigrav/errors.hpp"

namespace semigrav::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const Origin& origin, const std::string& what) {
  throw ConfigError(origin.describe() + ": " + what);
}

double parse_number(const std::string& text, const Origin& origin) {
  try {
    return csv::parse(text);
  } catch (const ConfigError&) {
    fail(origin, "expected a number, got '" + text + "'");
  }
}

}  // namespace

std::string Origin::describe() const {
  if (line > 0) return source + ":" + std::to_string(line);
  return source;
}

void Params::set(const std::string& key, std::string value, Origin origin) {
  entries_[key] = Entry{std::move(value), std::move(origin)};
}

const Entry& Params::entry(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing required parameter '" + key + "'");
  return it->second;
}

std::string Params::text(const std::string& key, const std::string& fallback) const {
  return has(key) ? entry(key).value : fallback;
}

double Params::number(const std::string& key) const {
  const auto& e = entry(key);
  const double v = parse_number(e.value, e.origin);
  if (!std::isfinite(v)) fail(e.origin, "'" + key + "' must be finite");
  return v;
}

double Params::number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

std::optional<double> Params::optional_number(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return number(key);
}

long Params::integer(const std::string& key, long fallback) const {
  if (!has(key)) return fallback;
  const auto& e = entry(key);
  const double v = parse_number(e.value, e.origin);
  if (v != std::floor(v) || std::abs(v) > 1e15) fail(e.origin, "'" + key + "' must be an integer");
  return static_cast<long>(v);
}

std::vector<double> Params::list(const std::string& key) const {
  const auto& e = entry(key);
  return parse_list(e.value, e.origin);
}

std::vector<double> Params::list(const std::string& key, const std::vector<double>& fallback) const {
  return has(key) ? list(key) : fallback;
}

bool Params::flag(const std::string& key) const {
  if (!has(key)) return false;
  const auto& e = entry(key);
  if (e.value == "true" || e.value == "1" || e.value == "yes" || e.value.empty()) return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  fail(e.origin, "'" + key + "' must be true or false");
}

void Params::require_known(const std::set<std::string>& allowed, const std::string& command) const {
  for (const auto& [key, e] : entries_)
    if (!allowed.count(key)) fail(e.origin, "unknown parameter '" + key + "' for command " + command);
}

std::vector<double> parse_list(const std::string& text, const Origin& origin) {
  const std::string t = trim(text);
  if (t.empty()) fail(origin, "empty list");
  if (t.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(t);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(trim(p));
    if (parts.size() != 3) fail(origin, "grid must have the form start:stop:count");
    const double a = parse_number(parts[0], origin);
    const double b = parse_number(parts[1], origin);
    const double n = parse_number(parts[2], origin);
    if (n != std::floor(n) || n < 1) fail(origin, "grid count must be a positive integer");
    if (n == 1 && a != b) fail(origin, "a one-point grid needs start == stop");
    const auto count = static_cast<std::size_t>(n);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
      out[i] = count == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    if (count > 1) out.back() = b;
    return out;
  }
  std::vector<double> out;
  for (const auto& item : csv::split(t)) out.push_back(parse_number(trim(item), origin));
  return out;
}

Params parse_config(std::istream& in, const std::string& source) {
  Params params;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const Origin origin{source, number};
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(origin, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, "missing key before '='");
    for (char c : key)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_'))
        fail(origin, "invalid character in key '" + key + "'");
    if (params.has(key)) fail(origin, "duplicate key '" + key + "'");
    params.set(key, value, origin);
  }
  return params;
}

Params load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in, path.string());
}

RunConfig resolve(std::string command, Params params) {
  RunConfig cfg;
  cfg.command = std::move(command);
  if (params.has("command") && params.text("command", "") != cfg.command)
    fail(params.entries().at("command").origin,
         "config is for command '" + params.text("command", "") + "', not '" + cfg.command + "'");
  cfg.output_dir = params.text("out", ".");
  const long seed = params.integer("seed", 0);
  if (seed < 0) fail(params.entries().at("seed").origin, "seed must be non-negative");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.svg = params.flag("svg");
  cfg.params = std::move(params);
  return cfg;
}

}  // namespace semigrav::cli
