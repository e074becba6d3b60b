#include "vpa/sequences.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vpa {

namespace {

nlohmann::json checks_json(const std::vector<InvariantCheck>& checks) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& c : checks) {
    out[c.name] = c.detail.empty() ? nlohmann::json(c.ok) : nlohmann::json{{"ok", c.ok}, {"detail", c.detail}};
  }
  return out;
}

void fail(InvariantCheck& c, const std::string& detail) {
  if (!c.ok) return;
  c.ok = false;
  c.detail = detail;
}

}  // namespace

DecreasingSeq decreasing_seq(std::size_t m) {
  if (m < 2) throw std::invalid_argument("decreasing_seq: m must be >= 2 (got " + std::to_string(m) + ")");
  DecreasingSeq seq;
  seq.m = m;
  seq.values.push_back(m);
  while (seq.values.back() > 1) {
    const std::size_t prev = seq.values.back();
    seq.values.push_back(prev - prev / 2);
  }
  seq.t = seq.values.size() - 1;
  return seq;
}

std::vector<InvariantCheck> check_invariants(const DecreasingSeq& seq) {
  InvariantCheck ends{"endpoints", true, {}};
  InvariantCheck rec{"recurrence", true, {}};
  InvariantCheck half{"at_least_half", true, {}};
  InvariantCheck sandwich{"gap_sandwich", true, {}};
  const auto& v = seq.values;
  if (v.empty() || v.front() != seq.m || v.back() != 1 || seq.t + 1 != v.size()) fail(ends, "m_0 != m or m_t != 1");
  for (std::size_t s = 1; s < v.size(); ++s) {
    if (v[s] != v[s - 1] - v[s - 1] / 2 || v[s] >= v[s - 1]) fail(rec, "s=" + std::to_string(s));
    if (2 * v[s] < v[s - 1]) fail(half, "s=" + std::to_string(s));
  }
  // m_{s-1} - m_s <= m_s <= 3 (m_s - m_{s+1}), s = 1..t-1
  for (std::size_t s = 1; s + 1 < v.size(); ++s) {
    if (v[s - 1] - v[s] > v[s] || v[s] > 3 * (v[s] - v[s + 1])) fail(sandwich, "s=" + std::to_string(s));
  }
  return {ends, rec, half, sandwich};
}

TauValue tau(const FourierCoefficients& c, std::size_t n, std::size_t m, double x) {
  if (m > n) throw std::invalid_argument("tau: m > n");
  if (n + m + 1 > c.kmax) throw std::out_of_range("tau: n + m + 1 exceeds kmax");
  const double hi = vp_mean(c, n + m + 1, m)(x);
  const double lo = vp_mean(c, n, m)(x);
  return {n, m, x, static_cast<double>(m + 1) * (hi - lo)};
}

IncreasingSeq increasing_seq(const FQuery& F, std::size_t n, std::size_t m, double rel_tol) {
  if (m == 0 || m > n) throw std::invalid_argument("increasing_seq: need 0 < m <= n");
  IncreasingSeq seq;
  seq.n = n;
  seq.m = m;
  seq.values.push_back(n);
  auto halves = [&](std::size_t lo_degree, std::size_t hi_degree, std::size_t nu) {
    const double base = F(lo_degree, nu);
    const double v = F(hi_degree, nu);
    return v <= 0.5 * base + rel_tol * (1.0 + base);
  };
  // Largest nu in 0..n failing the halving test at the given offset, or -1.
  auto largest_failure = [&](std::size_t ns, std::size_t offset) {
    for (std::size_t nu = n + 1; nu-- > 0;) {
      if (!halves(ns - m, ns - m + offset, nu)) return static_cast<long>(nu);
    }
    return -1L;
  };

  while (seq.values.back() < 2 * n) {
    if (seq.thresholds.size() >= 4 * n) throw std::logic_error("increasing_seq: no termination within 4n steps");
    const std::size_t ns = seq.values.back();
    const std::size_t cap = 2 * n + m - ns;  // nu_s >= cap selects the last rule
    std::size_t nu_s = cap;
    bool found = false;
    for (std::size_t cand = 1; cand < cap; ++cand) {
      if (largest_failure(ns, cand) < 0) {
        nu_s = cand;
        found = true;
        break;
      }
    }
    std::size_t next;
    int rule;
    if (nu_s <= m) {
      next = ns + m + 1;
      rule = 1;
    } else if (nu_s < cap) {
      next = ns + nu_s;
      rule = 2;
    } else {
      next = 2 * n + m;
      rule = 3;
    }
    seq.thresholds.push_back(nu_s);
    seq.cases.push_back(rule);
    seq.found.push_back(found);
    seq.binding_nu.push_back(nu_s > 1 && nu_s - 1 < cap ? largest_failure(ns, nu_s - 1) : -1L);
    seq.values.push_back(next);
  }
  seq.t = seq.values.size() - 1;

  for (std::size_t s = 0; s + 1 < seq.values.size(); ++s) {
    const std::size_t a = seq.values[s];
    const std::size_t b = seq.values[s + 1];
    for (std::size_t nu = 0; nu <= n; ++nu) {
      const double base = F(a - m, nu);
      const double tol = rel_tol * (1.0 + base);
      if (s + 2 <= seq.t && F(b - m, nu) > 0.5 * base + tol) ++seq.halving_violations;
      if (b - a > m + 1 && 0.5 * base > F(b - m - 1, nu) + tol) ++seq.reverse_violations;
    }
  }
  return seq;
}

std::vector<InvariantCheck> check_invariants(const IncreasingSeq& seq) {
  InvariantCheck start{"starts_at_n", true, {}};
  InvariantCheck incr{"strictly_increasing", true, {}};
  InvariantCheck gaps{"gaps_at_least_m_plus_1", true, {}};
  InvariantCheck range{"final_in_2n_to_2n_plus_m", true, {}};
  const auto& v = seq.values;
  if (v.empty() || v.front() != seq.n) fail(start, "n_0 != n");
  for (std::size_t s = 0; s + 1 < v.size(); ++s) {
    if (v[s + 1] <= v[s]) fail(incr, "s=" + std::to_string(s));
    if (v[s + 1] < v[s] + seq.m + 1) fail(gaps, "s=" + std::to_string(s));
  }
  if (!v.empty() && (v.back() < 2 * seq.n || v.back() > 2 * seq.n + seq.m)) {
    fail(range, "n_t=" + std::to_string(v.back()));
  }
  return {start, incr, gaps, range};
}

nlohmann::json to_json(const DecreasingSeq& seq) {
  return {{"kind", "decreasing"},
          {"m", seq.m},
          {"values", seq.values},
          {"t", seq.t},
          {"checks", checks_json(check_invariants(seq))}};
}

nlohmann::json to_json(const IncreasingSeq& seq) {
  return {{"kind", "increasing"},
          {"n", seq.n},
          {"m", seq.m},
          {"values", seq.values},
          {"thresholds", seq.thresholds},
          {"cases", seq.cases},
          {"threshold_found", seq.found},
          {"binding_nu", seq.binding_nu},
          {"t", seq.t},
          {"halving_violations", seq.halving_violations},
          {"reverse_violations", seq.reverse_violations},
          {"checks", checks_json(check_invariants(seq))}};
}

}  // namespace vpa
