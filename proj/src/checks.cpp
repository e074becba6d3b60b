#include "vpa/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "vpa/sequences.hpp"

namespace vpa {

namespace {

struct StatementName {
  Statement id;
  std::string_view name;
};

constexpr StatementName kNames[] = {
    {Statement::T1a, "T1a"}, {Statement::T1b, "T1b"}, {Statement::T2, "T2"},   {Statement::T3, "T3"},
    {Statement::C1, "C1"},   {Statement::L1, "L1"},   {Statement::L2, "L2"},   {Statement::L3, "L3"},
    {Statement::L4, "L4"},   {Statement::L4ln, "L4ln"}, {Statement::L5, "L5"}, {Statement::CMP, "CMP"},
};

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double explicit_slack(const Subject& s, const Tolerances& tol) {
  return tol.explicit_abs + tol.quadrature_rel * max_abs(s.f->samples());
}

InequalityReport base_report(Statement id, const Subject& s, const LocalErrorTable& t, std::size_t xi,
                             std::size_t n, std::size_t m) {
  InequalityReport r;
  r.id = id;
  r.corpus = s.name;
  r.n = n;
  r.m = m;
  r.x = t.xs().at(xi);
  r.p = t.p();
  return r;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view to_string(Statement s) {
  for (const auto& e : kNames) {
    if (e.id == s) return e.name;
  }
  return "?";
}

std::optional<Statement> parse_statement(std::string_view text) {
  for (const auto& e : kNames) {
    if (e.name == text) return e.id;
  }
  return std::nullopt;
}

const std::vector<Statement>& all_statements() {
  static const std::vector<Statement> all = [] {
    std::vector<Statement> v;
    for (const auto& e : kNames) v.push_back(e.id);
    return v;
  }();
  return all;
}

bool is_fitted(Statement s) {
  switch (s) {
    case Statement::T2:
    case Statement::T3:
    case Statement::L3:
    case Statement::L4:
    case Statement::L4ln:
    case Statement::L5: return true;
    default: return false;
  }
}

bool is_explicit(Statement s) { return s == Statement::T1a || s == Statement::T1b; }

double InequalityReport::ratio() const {
  if (!(rhs > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return (lhs - tail) / rhs;
}

// ---------------------------------------------------------- local error table

LocalErrorTable::LocalErrorTable(const BestApproxCache& cache, std::vector<double> xs, LebesgueExponent p,
                                 std::vector<std::size_t> degrees, std::size_t max_k,
                                 std::vector<double> extra_deltas, std::size_t extra_degree)
    : cache_(&cache),
      xs_(std::move(xs)),
      p_(p),
      max_k_(max_k),
      extra_deltas_(std::move(extra_deltas)),
      extra_degree_(extra_degree) {
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  row_.assign(degrees.empty() ? 0 : degrees.back() + 1, -1);
  for (std::size_t i = 0; i < degrees.size(); ++i) row_[degrees[i]] = static_cast<long>(i);

  const std::size_t cells = degrees.size() * xs_.size();
  sup_.resize(cells);
  fixed_.resize(cells);
  sup_prefix_.resize(cells);
  fixed_prefix_.resize(cells);
  centre_.resize(cells);
  extra_.resize(cells);
  const GridFunction& f = cache.function();
  for (std::size_t d : degrees) {
    const GridFunction res = f.minus(cache.get(d, p)->polynomial);
    for (std::size_t xi = 0; xi < xs_.size(); ++xi) {
      const std::size_t c = at(d, xi);
      const WindowProfile prof(res, xs_[xi], p);
      auto& su = sup_[c];
      auto& fx = fixed_[c];
      su.resize(max_k + 1);
      fx.resize(max_k + 1);
      sup_prefix_[c].assign(max_k + 2, 0.0);
      fixed_prefix_[c].assign(max_k + 2, 0.0);
      for (std::size_t k = 0; k <= max_k; ++k) {
        const double delta = FTable::delta(k);
        su[k] = prof.sup(delta);
        fx[k] = prof.fixed(delta);
        sup_prefix_[c][k + 1] = sup_prefix_[c][k] + su[k];
        fixed_prefix_[c][k + 1] = fixed_prefix_[c][k] + fx[k];
      }
      centre_[c] = prof.at_centre();
      if (d <= extra_degree_) {
        for (double delta : extra_deltas_) extra_[c].push_back(prof.sup(delta));
      }
    }
  }
}

std::size_t LocalErrorTable::at(std::size_t d, std::size_t xi) const {
  if (!has_degree(d)) throw std::out_of_range("LocalErrorTable: degree " + std::to_string(d) + " not tabulated");
  if (xi >= xs_.size()) throw std::out_of_range("LocalErrorTable: centre index out of range");
  return static_cast<std::size_t>(row_[d]) * xs_.size() + xi;
}

double LocalErrorTable::E(std::size_t d, std::size_t xi, std::size_t k, WindowVariant v) const {
  if (k > max_k_) throw std::out_of_range("LocalErrorTable: radius index out of range");
  const std::size_t c = at(d, xi);
  return v == WindowVariant::SupOverH ? sup_[c][k] : fixed_[c][k];
}

double LocalErrorTable::E0(std::size_t d, std::size_t xi) const { return centre_[at(d, xi)]; }

double LocalErrorTable::F(std::size_t d, std::size_t xi, std::size_t m, WindowVariant v) const {
  if (m > max_k_) throw std::out_of_range("LocalErrorTable: m exceeds the tabulated radii");
  const std::size_t c = at(d, xi);
  const auto& pre = v == WindowVariant::SupOverH ? sup_prefix_[c] : fixed_prefix_[c];
  return pre[m + 1] / static_cast<double>(m + 1);
}

double LocalErrorTable::E_extra(std::size_t d, std::size_t xi, std::size_t i) const {
  const std::size_t c = at(d, xi);
  if (d > extra_degree_ || i >= extra_[c].size()) throw std::out_of_range("LocalErrorTable: extra radius");
  return extra_[c][i];
}

LocalErrorTable::LowerWindowTerms LocalErrorTable::lower_window_terms(std::size_t xi, std::size_t n,
                                                                      std::size_t m) const {
  require(m <= n, "lower_window_terms: m > n");
  const std::size_t d = n - m;
  at(d, xi);
  const GridFunction res = cache_->function().minus(cache_->get(d, p_)->polynomial);
  const WindowProfile prof(res, xs_[xi], p_);
  const double a = kPi / static_cast<double>(2 * n - m + 1);
  const double b = kPi / static_cast<double>(m + 1);
  LowerWindowTerms out;
  out.at_start = prof.fixed(a);
  if (b > a) {
    // int_a^b g(t) dt / t = int_{ln a}^{ln b} g(e^s) ds
    constexpr int kIntervals = 64;
    const double la = std::log(a);
    const double step = (std::log(b) - la) / kIntervals;
    double sum = 0.5 * (out.at_start + prof.fixed(b));
    for (int i = 1; i < kIntervals; ++i) sum += prof.fixed(std::exp(la + step * i));
    out.integral = sum * step;
  }
  return out;
}

// ----------------------------------------------------------- pointwise checks

double sigma_error(const Subject& s, double x, std::size_t n, std::size_t m) {
  return std::abs(vp_mean(*s.coeffs, n, m)(x) - (*s.f)(x));
}

InequalityReport check_T1a(const Subject& s, const LocalErrorTable& t, std::size_t xi, std::size_t n, std::size_t m,
                           const Tolerances& tol) {
  require(m >= 1 && m <= n, "check_T1a: need 0 < m <= n");
  InequalityReport r = base_report(Statement::T1a, s, t, xi, n, m);
  const double x = r.x;
  const std::size_t d = n - m;
  const auto low = t.lower_window_terms(xi, n, m);
  r.lhs = sigma_error(s, x, n, m);
  r.rhs = kPi * kPi * low.at_start + 6.0 * t.F(d, xi, m, WindowVariant::FixedDelta) + low.integral;
  r.tail = t.E0(d, xi);
  r.extra = "tail=" + fmt(r.tail);
  r.pass = r.lhs <= r.rhs + r.tail + explicit_slack(s, tol);
  return r;
}

InequalityReport check_T1b(const Subject& s, const LocalErrorTable& t, std::size_t xi, std::size_t n, std::size_t m,
                           const Tolerances& tol) {
  require(m >= 1 && m <= n, "check_T1b: need 0 < m <= n");
  InequalityReport r = base_report(Statement::T1b, s, t, xi, n, m);
  const std::size_t d = n - m;
  const double log_factor = 1.0 + std::log(static_cast<double>(n + 1) / static_cast<double>(m + 1));
  r.lhs = sigma_error(s, r.x, n, m);
  r.rhs = (6.0 + kPi * kPi) * t.F(d, xi, m, WindowVariant::SupOverH) * log_factor;
  r.tail = t.E0(d, xi);
  r.extra = "tail=" + fmt(r.tail);
  r.pass = r.lhs <= r.rhs + r.tail + explicit_slack(s, tol);
  return r;
}

InequalityReport check_T2(const Subject& s, const LocalErrorTable& t, std::size_t xi, std::size_t n, std::size_t m) {
  require(m >= 1 && m <= n, "check_T2: need 0 < m <= n");
  InequalityReport r = base_report(Statement::T2, s, t, xi, n, m);
  double sum = 0.0;
  for (std::size_t nu = 0; nu <= n; ++nu) {
    const std::size_t d = n - m + nu;
    sum += (t.F(d, xi, m, WindowVariant::SupOverH) + t.F(d, xi, nu, WindowVariant::SupOverH)) /
           static_cast<double>(m + nu + 1);
  }
  r.lhs = sigma_error(s, r.x, n, m);
  r.rhs = sum;
  r.tail = t.E0(2 * n, xi);
  r.extra = "tail=" + fmt(r.tail);
  return r;
}

InequalityReport check_L3(const Subject& s, const LocalErrorTable& t, std::size_t xi, std::size_t n, std::size_t m,
                          std::size_t q) {
  require(m <= n, "check_L3: need m <= n");
  require(q >= m + 1, "check_L3: need q >= m + 1");
  InequalityReport r = base_report(Statement::L3, s, t, xi, n, m);
  double harmonic = 0.0;
  for (std::size_t nu = 0; nu < q; ++nu) harmonic += 1.0 / static_cast<double>(m + nu + 1);
  const FourierCoefficients& c = *s.coeffs;
  r.lhs = std::abs(vp_mean(c, n + q, m)(r.x) - vp_mean(c, n, m)(r.x));
  r.rhs = t.F(n - m, xi, m, WindowVariant::SupOverH) * harmonic;
  r.extra = "q=" + std::to_string(q);
  return r;
}

InequalityReport check_L4(const Subject& s, const LocalErrorTable& t, std::size_t xi, std::size_t n, std::size_t m,
                          std::size_t mu, bool ln_only) {
  require(mu >= 1 && 2 * mu <= m && m <= n, "check_L4: need 1 <= mu, 2 mu <= m <= n");
  InequalityReport r = base_report(ln_only ? Statement::L4ln : Statement::L4, s, t, xi, n, m);
  const double lg = std::log(static_cast<double>(m) / static_cast<double>(mu));
  r.lhs = std::abs(tau(*s.coeffs, n, m, r.x).value - tau(*s.coeffs, n - mu, m - mu, r.x).value);
  r.rhs = static_cast<double>(mu) * t.F(n - mu + 1, xi, mu - 1, WindowVariant::SupOverH) * (ln_only ? lg : 1.0 + lg);
  r.extra = "mu=" + std::to_string(mu);
  return r;
}

InequalityReport check_L5(const Subject& s, const LocalErrorTable& t, std::size_t xi, std::size_t n, std::size_t m) {
  require(m <= n, "check_L5: need m <= n");
  InequalityReport r = base_report(Statement::L5, s, t, xi, n, m);
  double sum = 0.0;
  for (std::size_t k = n - m; k <= n; ++k) sum += t.F(k, xi, k - (n - m), WindowVariant::SupOverH);
  r.lhs = std::abs(tau(*s.coeffs, n, m, r.x).value);
  r.rhs = sum;
  return r;
}

InequalityReport check_T3(const Subject& s, const BestApproxCache& sup_cache, std::size_t n, std::size_t m) {
  require(m <= n, "check_T3: need m <= n");
  InequalityReport r;
  r.id = Statement::T3;
  r.corpus = s.name;
  r.n = n;
  r.m = m;
  r.p = LebesgueExponent::infinity();
  const auto samples = s.f->samples();
  const std::vector<double> sig = vp_mean(*s.coeffs, n, m).on_grid(samples.size());
  double worst = 0.0;
  for (std::size_t j = 0; j < samples.size(); ++j) worst = std::max(worst, std::abs(sig[j] - samples[j]));
  double sum = 0.0;
  for (std::size_t nu = 0; nu <= n; ++nu) {
    sum += sup_cache.get(n - m + nu, LebesgueExponent::infinity())->error / static_cast<double>(m + nu + 1);
  }
  r.lhs = worst;
  r.rhs = sum;
  return r;
}

// ------------------------------------------------------------------- decay

std::vector<InequalityReport> check_C1(const std::string& name, const GridFunction& f, double x,
                                       std::span<const std::size_t> ns, std::size_t from, std::size_t to,
                                       bool control, const Tolerances& tol) {
  require(std::find(ns.begin(), ns.end(), from) != ns.end() && std::find(ns.begin(), ns.end(), to) != ns.end(),
          "check_C1: from/to must be in the schedule");
  const std::size_t kmax = *std::max_element(ns.begin(), ns.end());
  const FourierCoefficients c = compute_coefficients(f, kmax);
  std::vector<InequalityReport> out;
  double r_from = 0.0;
  double r_to = 0.0;
  for (std::size_t n : ns) {
    const std::size_t m = n / 4;
    InequalityReport r;
    r.id = Statement::C1;
    r.corpus = name;
    r.n = n;
    r.m = m;
    r.x = x;
    r.p = LebesgueExponent::infinity();
    r.lhs = std::abs(vp_mean(c, n, m)(x) - f(x));
    r.rhs = 1.0 + std::log(static_cast<double>(n + 1) / static_cast<double>(m + 1));
    r.extra = control ? "control" : "decay";
    if (n == from) r_from = r.ratio();
    if (n == to) r_to = r.ratio();
    out.push_back(std::move(r));
  }
  const bool decays = r_to <= tol.decay_factor * r_from + tol.decay_floor;
  for (auto& r : out) r.pass = control ? !decays : decays;
  return out;
}

// ----------------------------------------------------------- window oracle

std::vector<InequalityReport> check_L1(const std::string& name, const BestApproxCache& cache, std::size_t n,
                                       LebesgueExponent p, std::span<const double> xs,
                                       std::span<const std::size_t> ks, const Tolerances& tol,
                                       std::size_t& solver_failures) {
  std::vector<InequalityReport> out;
  for (double x : xs) {
    for (std::size_t k : ks) {
      const WindowSpec w{x, FTable::delta(k), p, WindowVariant::FixedDelta};
      double direct = 0.0;
      try {
        direct = best_windowed_direct(cache.function(), n, w).error;
      } catch (const ConvergenceError&) {
        ++solver_failures;
        continue;
      } catch (const std::invalid_argument&) {
        ++solver_failures;
        continue;
      }
      InequalityReport r;
      r.id = Statement::L1;
      r.corpus = name;
      r.n = n;
      r.x = x;
      r.p = p;
      r.extra = "k=" + std::to_string(k);
      r.lhs = E_windowed(cache, n, w, WindowedMethod::ViaGlobal);
      r.rhs = direct;
      // Relative gap against the ViaGlobal value, allowed 2% (1 + value).
      const double gap = std::abs(r.lhs - r.rhs);
      r.pass = gap <= tol.lhs_floor || gap <= tol.lemma1_rel * (1.0 + r.lhs) * r.lhs;
      out.push_back(std::move(r));
    }
  }
  return out;
}

// ------------------------------------------------------------ monotonicity

std::vector<InequalityReport> check_L2(const std::string& name, const LocalErrorTable& t, std::size_t max_n,
                                       std::size_t max_m, const Tolerances& tol) {
  require(max_m <= t.max_k(), "check_L2: max_m exceeds the tabulated radii");
  std::vector<InequalityReport> out;
  const auto sup = WindowVariant::SupOverH;
  for (std::size_t xi = 0; xi < t.xs().size(); ++xi) {
    struct Tally {
      std::string property;
      std::size_t violations = 0;
      double worst = -std::numeric_limits<double>::infinity();
      double allowance = 0.0;
    };
    // later <= earlier + monotone * (1 + earlier)
    auto record = [&](Tally& tl, double earlier, double later) {
      const double allow = tol.monotone * (1.0 + std::abs(earlier));
      const double rise = later - earlier;
      if (rise > allow) ++tl.violations;
      if (rise - allow > tl.worst - tl.allowance) {
        tl.worst = rise;
        tl.allowance = allow;
      }
    };
    Tally e_n{"E-in-n"}, e_d{"E-in-delta"}, f_n{"F-in-n"}, f_m{"F-in-m"};
    const std::size_t nd = t.extra_deltas().size();
    for (std::size_t n = 0; n <= max_n; ++n) {
      for (std::size_t i = 0; i < nd; ++i) {
        const double v = t.E_extra(n, xi, i);
        if (n + 1 <= max_n) record(e_n, v, t.E_extra(n + 1, xi, i));
        // Radii ascending: E must not decrease, i.e. -E must not increase.
        if (i + 1 < nd) record(e_d, -v, -t.E_extra(n, xi, i + 1));
      }
      if (n == 0) continue;
      for (std::size_t m = 1; m <= max_m; ++m) {
        const double v = t.F(n, xi, m, sup);
        if (n + 1 <= max_n) record(f_n, v, t.F(n + 1, xi, m, sup));
        if (m + 1 <= max_m) record(f_m, v, t.F(n, xi, m + 1, sup));
      }
    }
    for (Tally* tl : {&e_n, &e_d, &f_n, &f_m}) {
      InequalityReport r;
      r.id = Statement::L2;
      r.corpus = name;
      r.n = max_n;
      r.m = max_m;
      r.x = t.xs()[xi];
      r.p = t.p();
      r.extra = "property=" + tl->property + ";violations=" + std::to_string(tl->violations);
      r.lhs = std::isfinite(tl->worst) ? tl->worst : 0.0;
      r.rhs = tl->allowance;
      r.pass = tl->violations == 0;
      out.push_back(std::move(r));
    }
  }
  return out;
}

// ------------------------------------------------------ modulus comparisons

std::vector<InequalityReport> check_CMP(const std::string& name, const GridFunction& f, LebesgueExponent p,
                                        std::span<const std::size_t> ks, const Tolerances& tol) {
  const std::size_t kmax = ks.empty() ? 0 : *std::max_element(ks.begin(), ks.end());
  const std::size_t size = f.size();
  const GlobalModulusProfile omega_c(f, LebesgueExponent::infinity());
  const GlobalModulusProfile omega_p(f, p);
  std::vector<double> oc(kmax + 1), op(kmax + 1);
  for (std::size_t k = 0; k <= kmax; ++k) {
    oc[k] = omega_c(FTable::delta(k));
    op[k] = omega_p(FTable::delta(k));
  }
  // w[k][j], wf[k][j]: w_x f(delta_k) and w°_x f(delta_k) at x = node j.
  std::vector<std::vector<double>> w(kmax + 1, std::vector<double>(size));
  std::vector<std::vector<double>> wf(kmax + 1, std::vector<double>(size));
  const auto s = f.samples();
  for (std::size_t j = 0; j < size; ++j) {
    const WindowProfile prof(f, f.node(static_cast<std::ptrdiff_t>(j)), p, s[j]);
    for (std::size_t k = 0; k <= kmax; ++k) {
      w[k][j] = prof.sup(FTable::delta(k));
      wf[k][j] = prof.fixed(FTable::delta(k));
    }
  }
  std::vector<InequalityReport> out;
  auto emit = [&](std::size_t k, const char* which, double lhs, double rhs) {
    InequalityReport r;
    r.id = Statement::CMP;
    r.corpus = name;
    r.n = k;
    r.p = p;
    r.extra = std::string(which) + ";k=" + std::to_string(k);
    r.lhs = lhs;
    r.rhs = rhs;
    r.pass = lhs <= rhs + tol.comparison;
    out.push_back(std::move(r));
  };
  std::vector<double> mean_w(size), mean_wf(size);
  double mean_oc = 0.0;
  double mean_op = 0.0;
  std::size_t next = 0;
  std::vector<std::size_t> sorted(ks.begin(), ks.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k <= kmax; ++k) {
    const double inv = 1.0 / static_cast<double>(k + 1);
    for (std::size_t j = 0; j < size; ++j) {
      mean_w[j] += (w[k][j] - mean_w[j]) * inv;
      mean_wf[j] += (wf[k][j] - mean_wf[j]) * inv;
    }
    mean_oc += (oc[k] - mean_oc) * inv;
    mean_op += (op[k] - mean_op) * inv;
    while (next < sorted.size() && sorted[next] == k) {
      emit(k, "a", *std::max_element(w[k].begin(), w[k].end()), oc[k]);
      emit(k, "b", *std::max_element(mean_w.begin(), mean_w.end()), mean_oc);
      emit(k, "c", grid_norm(wf[k], p), op[k]);
      emit(k, "d", grid_norm(mean_wf, p), mean_op);
      ++next;
    }
  }
  return out;
}

// ----------------------------------------------------------------- fitting

FitResult fit_constant(Statement id, std::span<const InequalityReport> reports, const Tolerances& tol) {
  FitResult fit;
  fit.id = id;
  for (const auto& r : reports) {
    if (r.id != id) continue;
    const double lhs = r.lhs - r.tail;
    if (r.rhs <= tol.rhs_floor) {
      if (lhs > tol.lhs_floor) {
        ++fit.anomalies;
      } else {
        ++fit.excluded;
      }
      continue;
    }
    ++fit.admissible;
    fit.K = fit.vacuous ? lhs / r.rhs : std::max(fit.K, lhs / r.rhs);
    fit.vacuous = false;
  }
  if (!fit.vacuous) fit.K = std::max(fit.K, 0.0);
  return fit;
}

void apply_fit(std::span<InequalityReport> reports, const FitResult& fit, const Tolerances& tol) {
  for (auto& r : reports) {
    if (r.id != fit.id) continue;
    const double lhs = r.lhs - r.tail;
    if (r.rhs <= tol.rhs_floor) {
      r.pass = lhs <= tol.lhs_floor;
    } else {
      r.pass = lhs <= fit.K * r.rhs * (1.0 + 1e-12) + tol.lhs_floor;
    }
  }
}

}  // namespace vpa
