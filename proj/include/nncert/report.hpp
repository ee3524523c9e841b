#ifndef NNCERT_REPORT_HPP
#define NNCERT_REPORT_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace nncert {

/// One certified check: pass iff residual <= bound.
struct CheckEntry {
  std::string name;
  double value = 0.0;     // the quantity being bounded (or an estimated constant)
  double bound = 0.0;
  double residual = 0.0;  // what is actually compared against bound
  bool pass = false;
  std::string constants;  // constants used, with provenance (oracle-minimized | user | estimated | identity)

  static CheckEntry make(std::string name, double value, double bound, double residual, std::string constants = {});
};

struct CertificateReport {
  std::string title;
  std::vector<CheckEntry> entries;

  void add(CheckEntry e) { entries.push_back(std::move(e)); }
  bool all_pass() const;
  const CheckEntry* first_failure() const;
  void write_csv(const std::filesystem::path& path) const;
};

/// Decimal with 17 significant digits; round-trips bit-stable.
std::string format_full(double x);

}  // namespace nncert

#endif
