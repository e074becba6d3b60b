#pragma once

// CSV serialisation of coefficients, modulus tables, F tables and
// inequality reports. Reals are written with "%.17g" so files round-trip
// and compare bit for bit between runs.

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include "vpa/best_approx.hpp"
#include "vpa/checks.hpp"
#include "vpa/fourier.hpp"
#include "vpa/local_norms.hpp"

namespace vpa {

/// "%.17g"; empty for NaN.
std::string format_real(double v);

/// k,a_k,b_k with k = 0 carrying a0 (and b_0 = 0).
void write_coefficients_csv(std::ostream& out, const FourierCoefficients& c);
/// k,delta_k,value.
void write_modulus_csv(std::ostream& out, const ModulusTable& t);
/// k,delta_k,E_value, then a final "average" row.
void write_ftable_csv(std::ostream& out, const FTable& t);
/// corpus,n,m,x,p,extra,lhs,rhs_without_K,ratio,pass.
void write_reports_csv(std::ostream& out, std::span<const InequalityReport> reports);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace vpa
