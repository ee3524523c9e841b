#include "nncert/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nncert {

CheckEntry CheckEntry::make(std::string name, double value, double bound, double residual, std::string constants) {
  CheckEntry e;
  e.name = std::move(name);
  e.value = value;
  e.bound = bound;
  e.residual = residual;
  e.pass = residual <= bound;
  e.constants = std::move(constants);
  return e;
}

bool CertificateReport::all_pass() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

const CheckEntry* CertificateReport::first_failure() const {
  for (const auto& e : entries)
    if (!e.pass) return &e;
  return nullptr;
}

std::string format_full(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void CertificateReport::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "check,value,bound,residual,pass,constants\n";
  for (const auto& e : entries) {
    out << e.name << ',' << format_full(e.value) << ',' << format_full(e.bound) << ','
        << format_full(e.residual) << ',' << (e.pass ? 1 : 0) << ',' << '"' << e.constants << '"' << "\n";
  }
}

}  // namespace nncert
