#pragma once

// Index sequences used to telescope sigma_{n,m} f - f across scales, and the
// difference tau_{n,m} f(x) = (m+1) (sigma_{n+m+1,m} f(x) - sigma_{n,m} f(x)).

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vpa/fourier.hpp"

namespace vpa {

struct InvariantCheck {
  std::string name;
  bool ok = true;
  std::string detail;  // first offending index, empty when ok
};

/// m_0 = m, m_s = m_{s-1} - floor(m_{s-1} / 2), down to m_t = 1.
struct DecreasingSeq {
  std::size_t m = 0;
  std::vector<std::size_t> values;
  std::size_t t = 0;
};

/// Throws std::invalid_argument for m < 2.
DecreasingSeq decreasing_seq(std::size_t m);
std::vector<InvariantCheck> check_invariants(const DecreasingSeq& seq);

struct TauValue {
  std::size_t n = 0;
  std::size_t m = 0;
  double x = 0.0;
  double value = 0.0;
};

/// Requires m <= n and n + m + 1 <= c.kmax.
TauValue tau(const FourierCoefficients& c, std::size_t n, std::size_t m, double x);

/// F(degree, mu) = F_{degree, mu}(f, x) for the function and point at hand.
using FQuery = std::function<double(std::size_t degree, std::size_t mu)>;

/// n_0 = n < n_1 < ... < n_t with 2n <= n_t <= 2n + m.
///
/// nu_s is the smallest nu* >= 1 with
///   F_{n_s - m + nu*, nu} <= F_{n_s - m, nu} / 2 + tol   for every nu = 0..n,
/// searched up to 2n + m - n_s - 1; if none qualifies nu_s = 2n + m - n_s.
/// Then n_{s+1} = n_s + m + 1 (nu_s <= m), n_s + nu_s (m < nu_s < 2n + m - n_s)
/// or 2n + m (otherwise). tol = rel_tol * (1 + F).
struct IncreasingSeq {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::size_t> values;      // n_0..n_t
  std::vector<std::size_t> thresholds;  // nu_0..nu_{t-1}
  std::vector<int> cases;               // rule applied at each step, 1..3
  std::vector<bool> found;              // nu_s met the halving test (not a fallback)
  /// Per step: largest nu at which the halving test fails with nu* = nu_s - 1
  /// (-1 when nu_s = 1). Under a single-nu reading, only this nu forces nu_s.
  std::vector<long> binding_nu;
  std::size_t t = 0;
  std::size_t halving_violations = 0;  // F_{n_{s+1}-m,nu} > F_{n_s-m,nu}/2 + tol, s <= t-2
  std::size_t reverse_violations = 0;  // F_{n_s-m,nu}/2 > F_{n_{s+1}-m-1,nu} + tol where gap > m+1
};

/// Requires 0 < m <= n. Throws std::logic_error if the construction fails to
/// terminate within 4n steps.
IncreasingSeq increasing_seq(const FQuery& F, std::size_t n, std::size_t m, double rel_tol = 1e-9);
std::vector<InvariantCheck> check_invariants(const IncreasingSeq& seq);

nlohmann::json to_json(const DecreasingSeq& seq);
nlohmann::json to_json(const IncreasingSeq& seq);

}  // namespace vpa
