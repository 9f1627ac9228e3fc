#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace semigrav::cli {

// Where a parameter value came from, for diagnostics.
struct Origin {
  std::string source;
  int line = 0;

  std::string describe() const;
};

struct Entry {
  std::string value;
  Origin origin;
};

class Params {
 public:
  void set(const std::string& key, std::string value, Origin origin);
  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const std::map<std::string, Entry>& entries() const { return entries_; }

  std::string text(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  std::optional<double> optional_number(const std::string& key) const;
  long integer(const std::string& key, long fallback) const;
  // Comma-separated numbers, or an inclusive grid start:stop:count.
  std::vector<double> list(const std::string& key) const;
  std::vector<double> list(const std::string& key, const std::vector<double>& fallback) const;
  bool flag(const std::string& key) const;

  // Throws ConfigError naming the first key outside `allowed`.
  void require_known(const std::set<std::string>& allowed, const std::string& command) const;

 private:
  const Entry& entry(const std::string& key) const;

  std::map<std::string, Entry> entries_;
};

// Flat "key = value" lines; '#' starts a comment.
Params parse_config(std::istream& in, const std::string& source);
Params load_config(const std::filesystem::path& path);

std::vector<double> parse_list(const std::string& text, const Origin& origin);

struct RunConfig {
  std::string command;
  Params params;
  std::filesystem::path output_dir = ".";
  std::uint64_t seed = 0;
  bool svg = false;
};

// Pulls out/seed/svg from the parameter map into the typed fields.
RunConfig resolve(std::string command, Params params);

}  // namespace semigrav::cli
