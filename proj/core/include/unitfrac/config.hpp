#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "unitfrac/rational.hpp"

namespace unitfrac {

/// Plain key=value configuration: one pair per line, '#' comments, later
/// assignments win. CLI flags are applied through set() after loading, so
/// flags always override the file.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig from_file(const std::string& path);
  static KeyValueConfig from_text(const std::string& text);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::int64_t get_int64(const std::string& key, std::int64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  Rational get_rational(const std::string& key, const Rational& fallback) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace unitfrac
