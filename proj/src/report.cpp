#include "vpa/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace vpa {

std::string format_real(double v) {
  if (std::isnan(v)) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_coefficients_csv(std::ostream& out, const FourierCoefficients& c) {
  out << "k,a_k,b_k\n";
  out << "0," << format_real(c.a0) << ",0\n";
  for (std::size_t k = 1; k <= c.kmax; ++k) {
    out << k << ',' << format_real(c.a[k - 1]) << ',' << format_real(c.b[k - 1]) << '\n';
  }
}

void write_modulus_csv(std::ostream& out, const ModulusTable& t) {
  out << "k,delta_k,value\n";
  for (std::size_t k = 0; k < t.values.size(); ++k) {
    out << k << ',' << format_real(t.delta(k)) << ',' << format_real(t.values[k]) << '\n';
  }
}

void write_ftable_csv(std::ostream& out, const FTable& t) {
  out << "k,delta_k,E_value\n";
  for (std::size_t k = 0; k < t.entries.size(); ++k) {
    out << k << ',' << format_real(FTable::delta(k)) << ',' << format_real(t.entries[k]) << '\n';
  }
  out << "average,," << format_real(t.average) << '\n';
}

void write_reports_csv(std::ostream& out, std::span<const InequalityReport> reports) {
  out << "corpus,n,m,x,p,extra,lhs,rhs_without_K,ratio,pass\n";
  for (const auto& r : reports) {
    out << r.corpus << ',' << r.n << ',' << r.m << ',' << format_real(r.x) << ',' << r.p.to_string() << ','
        << r.extra << ',' << format_real(r.lhs) << ',' << format_real(r.rhs) << ',' << format_real(r.ratio()) << ','
        << (r.pass ? "true" : "false") << '\n';
  }
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace vpa
