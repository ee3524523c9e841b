#ifndef NNCERT_CONFIG_HPP
#define NNCERT_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace nncert {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sectioned key=value text. '#' and ';' start comments; keys live under the
/// most recent [section] header. Lookups record what was consumed so that
/// unknown keys can be rejected wholesale after parsing a command's schema.
class Config {
 public:
  static Config parse_file(const std::filesystem::path& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key, const std::string& dflt) const;
  double get_real(const std::string& section, const std::string& key) const;
  double get_real_or(const std::string& section, const std::string& key, double dflt) const;
  long get_int(const std::string& section, const std::string& key) const;
  long get_int_or(const std::string& section, const std::string& key, long dflt) const;
  std::uint64_t get_u64_or(const std::string& section, const std::string& key, std::uint64_t dflt) const;
  bool get_bool_or(const std::string& section, const std::string& key, bool dflt) const;

  /// Throws ConfigError naming the first key that no lookup touched.
  void reject_unknown() const;

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  std::map<std::string, std::string> kv_;              // "section.key" -> value
  mutable std::set<std::string> consumed_;
};

}  // namespace nncert

#endif
