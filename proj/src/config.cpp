#include "nncert/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace nncert {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

Config Config::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path.string());
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": key outside any [section]");
    const std::string full = section + "." + key;
    if (!cfg.kv_.emplace(full, value).second)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key " + full);
  }
  return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
  const std::string full = section + "." + key;
  const bool present = kv_.count(full) != 0;
  if (present) consumed_.insert(full);
  return present;
}

std::string Config::get(const std::string& section, const std::string& key) const {
  const std::string full = section + "." + key;
  auto it = kv_.find(full);
  if (it == kv_.end()) throw ConfigError(origin_ + ": missing required key " + full);
  consumed_.insert(full);
  return it->second;
}

std::string Config::get_or(const std::string& section, const std::string& key, const std::string& dflt) const {
  return has(section, key) ? get(section, key) : dflt;
}

double Config::get_real(const std::string& section, const std::string& key) const {
  const std::string s = get(section, key);
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ": key " + section + "." + key + " is not a number: " + s);
  }
  if (pos != s.size()) throw ConfigError(origin_ + ": trailing characters in " + section + "." + key);
  return v;
}

double Config::get_real_or(const std::string& section, const std::string& key, double dflt) const {
  return has(section, key) ? get_real(section, key) : dflt;
}

long Config::get_int(const std::string& section, const std::string& key) const {
  const std::string s = get(section, key);
  std::size_t pos = 0;
  long v;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ": key " + section + "." + key + " is not an integer: " + s);
  }
  if (pos != s.size()) throw ConfigError(origin_ + ": trailing characters in " + section + "." + key);
  return v;
}

long Config::get_int_or(const std::string& section, const std::string& key, long dflt) const {
  return has(section, key) ? get_int(section, key) : dflt;
}

std::uint64_t Config::get_u64_or(const std::string& section, const std::string& key, std::uint64_t dflt) const {
  if (!has(section, key)) return dflt;
  const std::string s = get(section, key);
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ": key " + section + "." + key + " is not an unsigned integer: " + s);
  }
}

bool Config::get_bool_or(const std::string& section, const std::string& key, bool dflt) const {
  if (!has(section, key)) return dflt;
  const std::string s = get(section, key);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(origin_ + ": key " + section + "." + key + " is not a boolean: " + s);
}

void Config::reject_unknown() const {
  for (const auto& [full, value] : kv_)
    if (!consumed_.count(full)) throw ConfigError(origin_ + ": unknown key " + full);
}

}  // namespace nncert
