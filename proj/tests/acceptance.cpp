// Acceptance suite: criteria 1-9 at their stated tolerances and time limits.
// Prints one PASS/FAIL line per criterion, followed by indented details.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vpa/best_approx.hpp"
#include "vpa/campaign.hpp"
#include "vpa/corpus.hpp"
#include "vpa/local_norms.hpp"
#include "vpa/report.hpp"
#include "vpa/sequences.hpp"

namespace fs = std::filesystem;
using namespace vpa;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void note(const std::string& s) { details.push_back(s); }
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note("failed: " + what);
    }
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void timed(Outcome& o, double seconds, double limit) {
  o.note("runtime " + num(seconds) + " s (limit " + num(limit) + " s)");
  o.require(seconds < limit, "runtime limit");
}

CampaignResult campaign(std::vector<Statement> ids, double& seconds) {
  RunConfig c;
  c.statements = std::move(ids);
  const auto t0 = Clock::now();
  CampaignResult r = run_campaign(c);
  seconds = since(t0);
  return r;
}

void solver_notes(Outcome& o, const CampaignResult& r) {
  for (const auto& s : r.solver_failures) o.note("solver failure: " + s);
  o.require(r.solver_failures.empty(), "no solver failures");
}

std::string describe(const InequalityReport& r) {
  std::string s = r.corpus + " n=" + std::to_string(r.n) + " m=" + std::to_string(r.m);
  if (!std::isnan(r.x)) s += " x=" + num(r.x);
  s += " p=" + r.p.to_string();
  if (!r.extra.empty()) s += " " + r.extra;
  return s + " lhs=" + num(r.lhs) + " rhs=" + num(r.rhs);
}

// 1. Polynomial reproduction.
Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  const RunConfig c;
  double worst = 0.0;
  std::size_t cases = 0;
  for (const auto& name : registry_names()) {
    const CorpusFunction& f = find_function(name);
    if (!f.polynomial) continue;
    const std::size_t d = f.polynomial->degree;
    const GridFunction g = f.sample();
    const auto coeffs = compute_coefficients(g, *std::max_element(c.n_list.begin(), c.n_list.end()));
    for (std::size_t n : c.n_list) {
      for (const auto& rule : c.m_rules) {
        const std::size_t m = rule.apply(n);
        if (n - m < d) continue;
        const auto s = vp_mean(coeffs, n, m).on_grid(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) worst = std::max(worst, std::abs(s[j] - g.samples()[j]));
        ++cases;
      }
    }
  }
  o.note(std::to_string(cases) + " (f, n, m) cases, max grid error " + num(worst));
  o.require(cases > 0 && worst <= 1e-10, "max |sigma - f| <= 1e-10");
  timed(o, since(t0), 5);
  return o;
}

// 2. Explicit constants.
Outcome criterion2() {
  Outcome o;
  double secs = 0;
  const auto r = campaign({Statement::T1a, Statement::T1b}, secs);
  for (Statement id : {Statement::T1a, Statement::T1b}) {
    const auto& rs = r.reports.at(id);
    std::size_t failed = 0;
    double worst = -1e300;
    for (const auto& x : rs) {
      failed += x.pass ? 0 : 1;
      worst = std::max(worst, x.lhs - x.rhs - x.tail);
      if (!x.pass && failed <= 10) o.note("violation " + std::string(to_string(id)) + ": " + describe(x));
    }
    o.note(std::string(to_string(id)) + ": " + std::to_string(rs.size() - failed) + "/" + std::to_string(rs.size()) +
           " pass, max lhs - rhs = " + num(worst));
    o.require(failed == 0, std::string(to_string(id)) + " holds with K = 1");
  }
  solver_notes(o, r);
  timed(o, secs, 600);
  return o;
}

// 3. Monotonicity.
Outcome criterion3() {
  Outcome o;
  double secs = 0;
  const auto r = campaign({Statement::L2}, secs);
  std::map<std::string, std::size_t> by_property;
  std::size_t violations = 0;
  for (const auto& x : r.reports.at(Statement::L2)) {
    const auto pos = x.extra.find(";violations=");
    const std::size_t v = std::stoul(x.extra.substr(pos + 12));
    by_property[x.extra.substr(9, pos - 9) + " p=" + x.p.to_string()] += v;
    violations += v;
  }
  for (const auto& [k, v] : by_property) o.note(k + ": " + std::to_string(v) + " violations");
  o.require(violations == 0, "zero monotonicity violations beyond 1e-9");
  solver_notes(o, r);
  timed(o, secs, 300);
  return o;
}

// 4. Lemma 1 oracle.
Outcome criterion4(const fs::path& out) {
  Outcome o;
  double secs = 0;
  const auto r = campaign({Statement::L1}, secs);
  const auto& rs = r.reports.at(Statement::L1);
  std::vector<InequalityReport> bad;
  std::map<std::string, std::pair<std::size_t, std::size_t>> by_p;
  for (const auto& x : rs) {
    auto& [ok, total] = by_p["p=" + x.p.to_string()];
    ++total;
    ok += x.pass ? 1 : 0;
    if (!x.pass) bad.push_back(x);
  }
  const double share = rs.empty() ? 0.0 : 1.0 - static_cast<double>(bad.size()) / static_cast<double>(rs.size());
  for (const auto& [p, c] : by_p) o.note(p + ": " + std::to_string(c.first) + "/" + std::to_string(c.second) + " agree");
  o.note("agreement " + num(100 * share) + "% over " + std::to_string(rs.size()) + " windows; " +
         std::to_string(r.direct_failures) + " direct-solver failures excluded");
  fs::create_directories(out);
  std::ostringstream csv;
  write_reports_csv(csv, bad);
  write_atomic(out / "L1_counter_samples.csv", csv.str());
  o.note(std::to_string(bad.size()) + " counter-samples written to " + (out / "L1_counter_samples.csv").string());
  o.require(share >= 0.95, "agreement within 2% on >= 95% of windows");
  solver_notes(o, r);
  timed(o, secs, 600);
  return o;
}

// 5. Fitted-constant stability.
Outcome criterion5() {
  Outcome o;
  double secs = 0;
  const auto r = campaign({Statement::T2, Statement::T3, Statement::L3, Statement::L4, Statement::L4ln, Statement::L5},
                          secs);
  const RunConfig c;
  for (const auto& [id, fit] : r.fits) {
    const auto& small = r.fits_small.at(id);
    const bool gated = id != Statement::L4ln;
    std::string line = std::string(to_string(id)) + ": K(n<=128) = " + (fit.vacuous ? "vacuous" : num(fit.K)) +
                       ", K(n<=" + std::to_string(c.fit_split) + ") = " + (small.vacuous ? "vacuous" : num(small.K)) +
                       ", anomalies " + std::to_string(fit.anomalies);
    if (!gated) line += " (ln-only form, recorded)";
    o.note(line);
    if (!gated) continue;
    o.require(!fit.vacuous && !small.vacuous && fit.K <= 1.25 * small.K,
              std::string(to_string(id)) + " K(128) <= 1.25 K(32)");
    o.require(fit.anomalies == 0, std::string(to_string(id)) + " no anomalies");
  }
  solver_notes(o, r);
  timed(o, secs, 1800);
  return o;
}

// 6. Pointwise decay.
Outcome criterion6() {
  Outcome o;
  double secs = 0;
  const auto r = campaign({Statement::C1}, secs);
  const RunConfig c;
  std::map<std::string, std::map<std::size_t, const InequalityReport*>> series;
  for (const auto& x : r.reports.at(Statement::C1)) series[x.corpus + " x=" + num(x.x) + " " + x.extra][x.n] = &x;
  for (const auto& [key, s] : series) {
    const auto* a = s.at(c.c1_from);
    const auto* b = s.at(c.c1_to);
    const double ra = a->lhs / a->rhs, rb = b->lhs / b->rhs;
    o.note(key + ": r(" + std::to_string(c.c1_from) + ") = " + num(ra) + ", r(" + std::to_string(c.c1_to) +
           ") = " + num(rb) + (a->pass ? "" : "  FAIL"));
    o.require(a->pass, key);
  }
  timed(o, secs, 300);
  return o;
}

// 7. Sequence invariants.
Outcome criterion7() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t dec_bad = 0;
  for (std::size_t m = 2; m <= 4096; ++m) {
    const auto s = decreasing_seq(m);
    const auto& v = s.values;
    bool ok = v.front() == m && v.back() == 1;
    for (std::size_t i = 1; i < v.size(); ++i) ok = ok && 2 * v[i] >= v[i - 1];
    for (std::size_t i = 1; i + 1 < v.size(); ++i) ok = ok && v[i - 1] - v[i] <= v[i] && v[i] <= 3 * (v[i] - v[i + 1]);
    dec_bad += ok ? 0 : 1;
  }
  o.note("decreasing: m = 2..4096, " + std::to_string(dec_bad) + " failures");
  o.require(dec_bad == 0, "decreasing sequence invariants");

  std::size_t runs = 0, inc_bad = 0;
  auto check_run = [&](const IncreasingSeq& s) {
    ++runs;
    const auto& v = s.values;
    bool ok = v.front() == s.n && v.back() >= 2 * s.n && v.back() <= 2 * s.n + s.m;
    for (std::size_t i = 1; i < v.size(); ++i) ok = ok && v[i] - v[i - 1] >= s.m + 1;
    inc_bad += ok ? 0 : 1;
  };
  for (const auto& cf : default_corpus()) {
    const GridFunction g = cf.sample(1024);
    const BestApproxCache cache(g);
    for (auto p : {LebesgueExponent::finite(2), LebesgueExponent::infinity()}) {
      for (double x : {g.node(300), g.node(700)}) {
        std::map<std::pair<std::size_t, std::size_t>, double> memo;
        const FQuery F = [&](std::size_t d, std::size_t mu) {
          auto [it, fresh] = memo.try_emplace({d, mu}, 0.0);
          if (fresh) it->second = F_average(cache, d, mu, x, p, WindowVariant::SupOverH).average;
          return it->second;
        };
        for (std::size_t n : {4, 8, 16}) {
          for (std::size_t m : {std::size_t{1}, n / 4, n / 2, n}) check_run(increasing_seq(F, n, m));
        }
      }
    }
  }
  o.note("increasing: " + std::to_string(runs) + " corpus runs, " + std::to_string(inc_bad) + " failures");
  o.require(inc_bad == 0, "increasing sequence invariants");
  timed(o, since(t0), 10);
  return o;
}

// 8. Cross-oracles.
Outcome criterion8() {
  Outcome o;
  const auto t0 = Clock::now();
  const RunConfig c;
  double worst_mean = 0.0, worst_tail = 0.0;
  for (const auto& cf : default_corpus()) {
    const GridFunction g = cf.sample();
    const auto coeffs = compute_coefficients(g, 128);
    for (std::size_t n : c.n_list) {
      for (const auto& rule : c.m_rules) {
        const std::size_t m = rule.apply(n);
        const auto s = vp_mean(coeffs, n, m);
        for (double x : centre_points(c.x_count, g.size())) {
          worst_mean = std::max(worst_mean, std::abs(s(x) - vp_mean_by_kernel(g, n, m, x)));
        }
      }
    }
    std::vector<double> r(g.size());
    for (std::size_t n = 0; n <= 128; ++n) {
      const auto b = best_global(g, n, LebesgueExponent::finite(2));
      for (std::size_t j = 0; j < g.size(); ++j) r[j] = g.samples()[j] - b.polynomial(g.node(static_cast<std::ptrdiff_t>(j)));
      worst_tail = std::max(worst_tail, std::abs(b.error - grid_norm(r, LebesgueExponent::finite(2))));
    }
  }
  o.note("max |vp_mean - kernel form| = " + num(worst_mean));
  o.note("max |Parseval tail - direct L2 residual| = " + num(worst_tail));
  o.require(worst_mean <= 1e-7, "coefficient and kernel forms within 1e-7");
  o.require(worst_tail <= 1e-8, "L2 error matches the Parseval tail within 1e-8");
  timed(o, since(t0), 120);
  return o;
}

// 9. Determinism of full runs.
Outcome criterion9(const fs::path& out) {
  Outcome o;
  const RunConfig c;
  const fs::path a = out / "run1", b = out / "run2";
  fs::remove_all(a);
  fs::remove_all(b);
  for (const auto& dir : {a, b}) {
    const auto t0 = Clock::now();
    const auto r = run_campaign(c);
    write_campaign(r, c, dir);
    o.note("full run into " + dir.string() + ": " + num(since(t0)) + " s, exit code " + std::to_string(r.exit_code()));
  }
  std::set<std::string> names;
  for (const auto& dir : {a, b}) {
    for (const auto& e : fs::directory_iterator(dir)) names.insert(e.path().filename().string());
  }
  std::size_t differing = 0;
  for (const auto& n : names) {
    auto slurp = [](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      std::ostringstream s;
      s << in.rdbuf();
      return s.str();
    };
    if (!fs::exists(a / n) || !fs::exists(b / n) || slurp(a / n) != slurp(b / n)) {
      ++differing;
      o.note("differs: " + n);
    }
  }
  o.note(std::to_string(names.size()) + " artifacts compared");
  o.require(!names.empty() && differing == 0, "bit-identical artifacts");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string out = "acceptance";
  std::vector<int> only;
  app.add_option("--out", out, "Directory for counter-samples and run artifacts");
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"polynomial reproduction", criterion1},
      {"explicit constants T1a/T1b", criterion2},
      {"monotonicity of E and F", criterion3},
      {"windowed oracle agreement", [&] { return criterion4(out); }},
      {"fitted-constant stability", criterion5},
      {"pointwise decay", criterion6},
      {"sequence invariants", criterion7},
      {"cross-oracles", criterion8},
      {"determinism", [&] { return criterion9(out); }},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << criteria[i].first << "\n";
    for (const auto& d : o.details) std::cout << "    " << d << "\n";
    std::cout.flush();
  }
  return all ? 0 : 1;
}
