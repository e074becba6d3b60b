#include "vpa/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "vpa/best_approx.hpp"
#include "vpa/corpus.hpp"
#include "vpa/report.hpp"

namespace vpa {

namespace {

bool selected(const RunConfig& c, Statement s) {
  return std::find(c.statements.begin(), c.statements.end(), s) != c.statements.end();
}

std::vector<const CorpusFunction*> corpus_of(const RunConfig& c) {
  std::vector<const CorpusFunction*> out;
  if (c.corpus.empty()) {
    for (const auto& f : default_corpus()) out.push_back(&f);
  } else {
    for (const auto& name : c.corpus) out.push_back(&find_function(name));
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> nm_pairs(const RunConfig& c) {
  std::set<std::pair<std::size_t, std::size_t>> s;
  for (std::size_t n : c.n_list) {
    for (const auto& r : c.m_rules) s.emplace(n, r.apply(n));
  }
  return {s.begin(), s.end()};
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

nlohmann::json fit_json(const FitResult& f) {
  nlohmann::json j;
  j["vacuous"] = f.vacuous;
  j["K"] = f.vacuous ? nlohmann::json(nullptr) : nlohmann::json(f.K);
  j["admissible"] = f.admissible;
  j["excluded"] = f.excluded;
  j["anomalies"] = f.anomalies;
  return j;
}

struct Unit {
  const RunConfig& c;
  const CorpusFunction& cf;
  const GridFunction& g;
  const FourierCoefficients& coeffs;
  const BestApproxCache& cache;
  CampaignResult& out;
  std::ostream* log;

  void add(std::vector<InequalityReport> rs) {
    for (auto& r : rs) out.reports[r.id].push_back(std::move(r));
  }
  void add(InequalityReport r) { out.reports[r.id].push_back(std::move(r)); }

  std::vector<double> centres() const {
    std::vector<double> xs;
    for (double x : centre_points(c.x_count, g.size())) {
      if (cf.continuous_at(x, 0.5 * g.spacing())) xs.push_back(x);
    }
    return xs;
  }

  // T1a, T1b, T2, L2, L3, L4, L5 at one exponent.
  void pointwise(LebesgueExponent p) {
    const bool t1 = selected(c, Statement::T1a) || selected(c, Statement::T1b);
    const bool t2 = selected(c, Statement::T2);
    const bool l2 = selected(c, Statement::L2);
    const bool l3 = selected(c, Statement::L3);
    const bool l4 = selected(c, Statement::L4) || selected(c, Statement::L4ln);
    const bool l5 = selected(c, Statement::L5);
    if (!(t1 || t2 || l2 || l3 || l4 || l5)) return;

    std::vector<std::size_t> degrees;
    std::size_t max_k = 0;
    const auto pairs = nm_pairs(c);
    for (const auto& [n, m] : pairs) {
      if (t1 && m >= 1) {
        degrees.push_back(n - m);
        max_k = std::max(max_k, m);
      }
      if (t2 && m >= 1) {
        for (std::size_t d = n - m; d <= 2 * n; ++d) degrees.push_back(d);
        max_k = std::max(max_k, n);
      }
      if (l3) {
        degrees.push_back(n - m);
        max_k = std::max(max_k, m);
      }
      if (l4) {
        for (std::size_t mu : mu_values(m)) {
          degrees.push_back(n - mu + 1);
          max_k = std::max(max_k, mu - 1);
        }
      }
      if (l5) {
        for (std::size_t d = n - m; d <= n; ++d) degrees.push_back(d);
        max_k = std::max(max_k, m);
      }
    }
    std::vector<double> deltas;
    if (l2) {
      for (std::size_t d = 0; d <= c.l2_max_n; ++d) degrees.push_back(d);
      max_k = std::max(max_k, c.l2_max_m);
      for (std::size_t i = 0; i < c.l2_deltas; ++i) {
        deltas.push_back(kPi * static_cast<double>(i + 1) / static_cast<double>(c.l2_deltas));
      }
    }

    const Stopwatch sw;
    const LocalErrorTable table(cache, centres(), p, degrees, max_k, deltas, l2 ? c.l2_max_n : 0);
    if (log) {
      *log << "  " << cf.name << " p=" << p.to_string() << ": table ready (" << std::fixed;
      log->precision(1);
      *log << sw.seconds() << " s)\n";
      log->unsetf(std::ios::floatfield);
    }
    const Subject s{cf.name, &g, &coeffs};
    for (std::size_t xi = 0; xi < table.xs().size(); ++xi) {
      for (const auto& [n, m] : pairs) {
        if (m >= 1) {
          if (selected(c, Statement::T1a)) add(check_T1a(s, table, xi, n, m, c.tol));
          if (selected(c, Statement::T1b)) add(check_T1b(s, table, xi, n, m, c.tol));
          if (t2) add(check_T2(s, table, xi, n, m));
        }
        if (l3) {
          for (std::size_t q : {m + 1, 2 * (m + 1)}) add(check_L3(s, table, xi, n, m, q));
        }
        for (std::size_t mu : l4 ? mu_values(m) : std::vector<std::size_t>{}) {
          if (selected(c, Statement::L4)) add(check_L4(s, table, xi, n, m, mu, false));
          if (selected(c, Statement::L4ln)) add(check_L4(s, table, xi, n, m, mu, true));
        }
        if (l5) add(check_L5(s, table, xi, n, m));
      }
    }
    if (l2) add(check_L2(cf.name, table, c.l2_max_n, c.l2_max_m, c.tol));
  }

  void uniform() {
    if (!selected(c, Statement::T3) || !cf.continuous()) return;
    const Subject s{cf.name, &g, &coeffs};
    for (const auto& [n, m] : nm_pairs(c)) add(check_T3(s, cache, n, m));
  }

  void decay() {
    if (!selected(c, Statement::C1)) return;
    if (cf.continuous()) {
      for (double x : c.c1_points) add(check_C1(cf.name, g, x, c.c1_n, c.c1_from, c.c1_to, false, c.tol));
    }
    for (const auto& [name, x] : c.c1_controls) {
      if (name == cf.name) add(check_C1(cf.name, g, x, c.c1_n, c.c1_from, c.c1_to, true, c.tol));
    }
  }

  void window_oracle() {
    if (!selected(c, Statement::L1)) return;
    const auto xs = centre_points(c.l1_x_count, g.size());
    for (const auto& p : c.l1_p) {
      for (std::size_t n : c.l1_n) add(check_L1(cf.name, cache, n, p, xs, c.l1_k, c.tol, out.direct_failures));
    }
  }

  void comparisons() {
    if (!selected(c, Statement::CMP)) return;
    const GridFunction small = cf.sample(c.cmp_samples);
    for (const auto& p : c.p_list) add(check_CMP(cf.name, small, p, c.cmp_k, c.tol));
  }

  // Runs `body`, turning solver failures into records instead of aborting.
  template <class F>
  void guarded(const std::string& what, F&& body) {
    try {
      body();
    } catch (const ConvergenceError& e) {
      out.solver_failures.push_back(cf.name + " " + what + ": " + e.what());
      if (log) *log << "  solver failure: " << out.solver_failures.back() << "\n";
    }
  }
};

std::size_t coefficient_kmax(const RunConfig& c) {
  std::size_t kmax = 0;
  for (const auto& [n, m] : nm_pairs(c)) kmax = std::max(kmax, n + 2 * (m + 1));
  return kmax;
}

}  // namespace

std::vector<double> centre_points(std::size_t count, std::size_t n) {
  std::vector<double> xs;
  const double h = kTwoPi / static_cast<double>(n);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = -kPi + kTwoPi * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    xs.push_back(-kPi + h * std::round((x + kPi) / h));
  }
  return xs;
}

std::vector<std::size_t> mu_values(std::size_t m) {
  std::vector<std::size_t> out;
  for (std::size_t mu : {std::size_t{1}, m / 4, m / 2}) {
    if (mu >= 1 && 2 * mu <= m && std::find(out.begin(), out.end(), mu) == out.end()) out.push_back(mu);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int CampaignResult::exit_code() const {
  if (!solver_failures.empty()) return kExitSolverFailure;
  if (explicit_failures > 0 || anomalies > 0) return kExitCheckFailure;
  return kExitOk;
}

nlohmann::json CampaignResult::summary(const RunConfig& c) const {
  nlohmann::json j;
  j["samples"] = c.samples;
  std::vector<std::string> names;
  for (const auto* f : corpus_of(c)) names.push_back(f->name);
  j["corpus"] = names;
  nlohmann::json st = nlohmann::json::object();
  for (const auto& [id, rs] : reports) {
    nlohmann::json e;
    const auto passed = static_cast<std::size_t>(std::count_if(rs.begin(), rs.end(), [](const auto& r) { return r.pass; }));
    e["reports"] = rs.size();
    e["passed"] = passed;
    e["failed"] = rs.size() - passed;
    if (auto it = fits.find(id); it != fits.end()) e["fit"] = fit_json(it->second);
    if (auto it = fits_small.find(id); it != fits_small.end()) {
      e["fit_small_n"] = fit_json(it->second);
      e["fit_small_n"]["max_n"] = c.fit_split;
    }
    st[std::string(to_string(id))] = e;
  }
  j["statements"] = st;
  j["anomalies"] = anomalies;
  j["explicit_failures"] = explicit_failures;
  j["solver_failures"] = solver_failures;
  j["direct_solver_failures"] = direct_failures;
  j["exit_code"] = exit_code();
  return j;
}

CampaignResult run_campaign(const RunConfig& c, std::ostream* log) {
  validate(c);
  CampaignResult out;
  if (c.statements.empty()) return out;
  const std::size_t kmax = coefficient_kmax(c);
  for (const CorpusFunction* cf : corpus_of(c)) {
    const Stopwatch sw;
    if (log) *log << "[verify] " << cf->name << "\n";
    const GridFunction g = cf->sample(c.samples);
    const FourierCoefficients coeffs = compute_coefficients(g, kmax);
    const BestApproxCache cache(g);
    Unit u{c, *cf, g, coeffs, cache, out, log};
    for (const auto& p : c.p_list) u.guarded("p=" + p.to_string(), [&] { u.pointwise(p); });
    u.guarded("uniform bound", [&] { u.uniform(); });
    u.decay();
    u.guarded("window oracle", [&] { u.window_oracle(); });
    u.comparisons();
    if (log) {
      *log << "  done in " << std::fixed;
      log->precision(1);
      *log << sw.seconds() << " s\n";
      log->unsetf(std::ios::floatfield);
    }
  }

  for (auto& [id, rs] : out.reports) {
    if (is_explicit(id)) {
      out.explicit_failures += static_cast<std::size_t>(std::count_if(rs.begin(), rs.end(), [](const auto& r) { return !r.pass; }));
    }
    if (!is_fitted(id)) continue;
    const FitResult all = fit_constant(id, rs, c.tol);
    std::vector<InequalityReport> small;
    for (const auto& r : rs) {
      if (r.n <= c.fit_split) small.push_back(r);
    }
    out.fits[id] = all;
    out.fits_small[id] = fit_constant(id, small, c.tol);
    apply_fit(rs, all, c.tol);
    out.anomalies += all.anomalies;
  }
  return out;
}

void write_campaign(const CampaignResult& result, const RunConfig& c, const std::filesystem::path& dir) {
  if (c.statements.empty()) return;
  std::filesystem::create_directories(dir);
  for (const auto& [id, rs] : result.reports) {
    std::ostringstream csv;
    write_reports_csv(csv, rs);
    write_atomic(dir / (std::string(to_string(id)) + ".csv"), csv.str());
  }
  write_atomic(dir / "summary.json", result.summary(c).dump(2) + "\n");
}

}  // namespace vpa
