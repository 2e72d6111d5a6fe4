#include "unitfrac/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace unitfrac {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

KeyValueConfig KeyValueConfig::from_text(const std::string& text) {
  KeyValueConfig config;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               " has no '='");
    const std::string key = trim(stripped.substr(0, eq));
    if (key.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               " has an empty key");
    config.entries_[key] = trim(stripped.substr(eq + 1));
  }
  return config;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

bool KeyValueConfig::has(const std::string& key) const {
  return entries_.count(key) != 0;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

std::int64_t KeyValueConfig::get_int64(const std::string& key,
                                       std::int64_t fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::int64_t value = 0;
  const auto& s = it->second;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error("config key " + key + " is not an integer: " + s);
  return value;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  try {
    std::size_t used = 0;
    const double value = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return value;
  } catch (const std::exception&) {
    throw std::runtime_error("config key " + key +
                             " is not a number: " + it->second);
  }
}

Rational KeyValueConfig::get_rational(const std::string& key,
                                      const Rational& fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  try {
    return parse_rational(it->second);
  } catch (const std::exception&) {
    throw std::runtime_error("config key " + key +
                             " is not a rational: " + it->second);
  }
}

}  // namespace unitfrac
