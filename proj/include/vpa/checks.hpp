#pragma once

// Numerical checks of the pointwise approximation inequalities.
//
// Each check produces InequalityReports of the form
//   lhs <= K * rhs + tail
// where `tail` collects the terms that sit outside the constant. Explicit
// statements (T1a, T1b) have K = 1; the others get K fitted over a grid.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vpa/best_approx.hpp"
#include "vpa/fourier.hpp"
#include "vpa/local_norms.hpp"

namespace vpa {

enum class Statement { T1a, T1b, T2, T3, C1, L1, L2, L3, L4, L4ln, L5, CMP };

std::string_view to_string(Statement s);
std::optional<Statement> parse_statement(std::string_view text);
const std::vector<Statement>& all_statements();
/// T2, T3, L3, L4, L4ln, L5.
bool is_fitted(Statement s);
/// T1a, T1b.
bool is_explicit(Statement s);

struct Tolerances {
  double explicit_abs = 1e-6;    // T1a, T1b absolute slack
  double quadrature_rel = 1e-6;  // T1a, T1b slack per unit of max |f|
  double rhs_floor = 1e-12;      // fitting: rhs at or below counts as zero
  double lhs_floor = 1e-9;       // fitting: lhs at or below counts as zero
  double monotone = 1e-9;        // L2, relative to 1 + value
  double lemma1_rel = 0.02;      // L1 relative gap
  double comparison = 1e-6;      // CMP
  double decay_factor = 0.5;     // C1: r(last) <= factor * r(first) + floor
  double decay_floor = 1e-12;
  double halving = 1e-9;         // sequence halving tests

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct InequalityReport {
  Statement id = Statement::T1a;
  std::string corpus;
  std::size_t n = 0;
  std::size_t m = 0;
  double x = std::numeric_limits<double>::quiet_NaN();  // NaN for global statements
  LebesgueExponent p = LebesgueExponent::infinity();
  std::string extra;
  double lhs = 0.0;
  double rhs = 0.0;   // rhs without K
  double tail = 0.0;  // terms outside K
  bool pass = true;

  /// (lhs - tail) / rhs; NaN when rhs is zero.
  double ratio() const;
};

/// A corpus member prepared for the pointwise checks.
struct Subject {
  std::string name;
  const GridFunction* f = nullptr;
  const FourierCoefficients* coeffs = nullptr;  // kmax covers every sigma used
};

/// Windowed errors of f - T_d (T_d the global best approximation in X^p)
/// for each listed degree d, centre x in `xs` and radius pi/(k+1),
/// k <= max_k, in both variants, plus the value at the centre. Degrees
/// <= extra_degree also get the sup variant at `extra_deltas`. Queries for
/// unlisted degrees throw std::out_of_range.
class LocalErrorTable {
 public:
  LocalErrorTable(const BestApproxCache& cache, std::vector<double> xs, LebesgueExponent p,
                  std::vector<std::size_t> degrees, std::size_t max_k, std::vector<double> extra_deltas = {},
                  std::size_t extra_degree = 0);

  const std::vector<double>& xs() const { return xs_; }
  const LebesgueExponent& p() const { return p_; }
  bool has_degree(std::size_t d) const { return d < row_.size() && row_[d] >= 0; }
  std::size_t max_k() const { return max_k_; }
  const std::vector<double>& extra_deltas() const { return extra_deltas_; }
  std::size_t extra_degree() const { return extra_degree_; }

  /// E_d(f, x; pi/(k+1)) or E°_d.
  double E(std::size_t d, std::size_t xi, std::size_t k, WindowVariant v) const;
  /// E_d(f, x; 0) = |f(x) - T_d(x)|.
  double E0(std::size_t d, std::size_t xi) const;
  /// F_{d,m}(f, x) or F°_{d,m}.
  double F(std::size_t d, std::size_t xi, std::size_t m, WindowVariant v) const;
  /// E_d(f, x; extra_deltas[i]), sup variant.
  double E_extra(std::size_t d, std::size_t xi, std::size_t i) const;

  struct LowerWindowTerms {
    double at_start = 0.0;  // E°_d(f, x; a), a = pi/(2n-m+1)
    double integral = 0.0;  // int_a^b E°_d(f, x; t) / t dt, b = pi/(m+1)
  };
  /// The E° terms of the first explicit bound for (n, m), d = n - m. The
  /// integral is a 64-interval trapezoid rule in log t.
  LowerWindowTerms lower_window_terms(std::size_t xi, std::size_t n, std::size_t m) const;

 private:
  std::size_t at(std::size_t d, std::size_t xi) const;

  const BestApproxCache* cache_;
  std::vector<double> xs_;
  LebesgueExponent p_;
  std::vector<long> row_;  // degree -> row, -1 if absent
  std::size_t max_k_;
  std::vector<double> extra_deltas_;
  std::size_t extra_degree_;
  // Per (row, xi): E over k and its prefix sums, both variants.
  std::vector<std::vector<double>> sup_;
  std::vector<std::vector<double>> fixed_;
  std::vector<std::vector<double>> sup_prefix_;
  std::vector<std::vector<double>> fixed_prefix_;
  std::vector<double> centre_;
  std::vector<std::vector<double>> extra_;
};

/// |sigma_{n,m} f(x) - f(x)|.
double sigma_error(const Subject& s, double x, std::size_t n, std::size_t m);

// Pointwise statements at table centre xi. Preconditions follow the
// statements; violations throw std::invalid_argument.

/// 0 < m <= n; degree n - m listed in the table.
InequalityReport check_T1a(const Subject& s, const LocalErrorTable& t, std::size_t xi, std::size_t n, std::size_t m,
                           const Tolerances& tol);
InequalityReport check_T1b(const Subject& s, const LocalErrorTable& t, std::size_t xi, std::size_t n, std::size_t m,
                           const Tolerances& tol);
/// 0 < m <= n; degrees n-m..2n listed, n <= max_k.
InequalityReport check_T2(const Subject& s, const LocalErrorTable& t, std::size_t xi, std::size_t n, std::size_t m);
/// m <= n, q >= m + 1.
InequalityReport check_L3(const Subject& s, const LocalErrorTable& t, std::size_t xi, std::size_t n, std::size_t m,
                          std::size_t q);
/// 1 <= mu, 2 mu <= m <= n. Factor 1 + ln(m/mu), or ln(m/mu) alone with ln_only.
InequalityReport check_L4(const Subject& s, const LocalErrorTable& t, std::size_t xi, std::size_t n, std::size_t m,
                          std::size_t mu, bool ln_only);
/// m <= n.
InequalityReport check_L5(const Subject& s, const LocalErrorTable& t, std::size_t xi, std::size_t n, std::size_t m);

/// Uniform bound for continuous f, against E(f)_C from `sup_cache`.
InequalityReport check_T3(const Subject& s, const BestApproxCache& sup_cache, std::size_t n, std::size_t m);

/// r(n) = |sigma_{n,m} f(x) - f(x)| / (1 + ln((n+1)/(m+1))), m = n/4, along
/// `ns`. One report per n (lhs = |sigma - f|, rhs = 1 + ln); each carries
/// the verdict r(to) <= factor * r(from) + floor, negated for controls.
/// `from` and `to` must be members of `ns`.
std::vector<InequalityReport> check_C1(const std::string& name, const GridFunction& f, double x,
                                       std::span<const std::size_t> ns, std::size_t from, std::size_t to,
                                       bool control, const Tolerances& tol);

/// Windowed error through the global minimiser (lhs) against direct
/// minimisation on the window (rhs), fixed variant, at every x and radius
/// pi/(k+1). Windows where the direct solver fails are counted in
/// `solver_failures` and skipped.
std::vector<InequalityReport> check_L1(const std::string& name, const BestApproxCache& cache, std::size_t n,
                                       LebesgueExponent p, std::span<const double> xs,
                                       std::span<const std::size_t> ks, const Tolerances& tol,
                                       std::size_t& solver_failures);

/// Monotonicity of E in n and delta and of F in n and m, per centre. One
/// report per (x, property): lhs is the largest increase found, rhs the
/// allowance at that spot, extra names the property and the violation
/// count.
std::vector<InequalityReport> check_L2(const std::string& name, const LocalErrorTable& t, std::size_t max_n,
                                       std::size_t max_m, const Tolerances& tol);

/// The four modulus comparisons, with every grid node of f as x:
///   a: max_x w_x f(d)_p   <= omega f(d)_C
///   b: max_x Omega_x f_p  <= Omega f_C
///   c: ||w°_. f(d)_p||_p  <= omega f(d)_p
///   d: ||Omega°_. f_p||_p <= Omega f_p
/// at d = pi/(k+1) for k in ks (Omega at n = k).
std::vector<InequalityReport> check_CMP(const std::string& name, const GridFunction& f, LebesgueExponent p,
                                        std::span<const std::size_t> ks, const Tolerances& tol);

struct FitResult {
  Statement id = Statement::T2;
  bool vacuous = true;   // no admissible report
  double K = 0.0;        // max (lhs - tail) / rhs over admissible reports
  std::size_t admissible = 0;
  std::size_t excluded = 0;   // 0/0 points
  std::size_t anomalies = 0;  // lhs > floor with rhs <= floor
};

/// Fits K over the reports of one statement. Only reports with id == `id`
/// are considered.
FitResult fit_constant(Statement id, std::span<const InequalityReport> reports, const Tolerances& tol);

/// Sets `pass` on the reports of fit.id: lhs <= K rhs + tail (+ slack), and
/// false for anomalies.
void apply_fit(std::span<InequalityReport> reports, const FitResult& fit, const Tolerances& tol);

}  // namespace vpa
