#include <doctest.h>

#include <cmath>
#include <map>

#include "support.hpp"
#include "vpa/best_approx.hpp"
#include "vpa/corpus.hpp"
#include "vpa/sequences.hpp"

using namespace vpa;
using namespace vpa::test;

namespace {

bool all_ok(const std::vector<InvariantCheck>& checks) {
  for (const auto& c : checks) {
    if (!c.ok) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("decreasing sequence examples") {
  CHECK(decreasing_seq(2).values == std::vector<std::size_t>{2, 1});
  CHECK(decreasing_seq(7).values == std::vector<std::size_t>{7, 4, 2, 1});
  const auto s = decreasing_seq(10);
  CHECK(s.values == std::vector<std::size_t>{10, 5, 3, 2, 1});
  CHECK(s.t == 4);
  CHECK_THROWS_AS(decreasing_seq(1), std::invalid_argument);
  CHECK_THROWS_AS(decreasing_seq(0), std::invalid_argument);
}

TEST_CASE("decreasing sequence invariants for m in 2..4096") {
  for (std::size_t m = 2; m <= 4096; ++m) {
    const auto s = decreasing_seq(m);
    const auto& v = s.values;
    REQUIRE(v.front() == m);
    REQUIRE(v.back() == 1);
    CHECK(s.t + 1 == v.size());
    CHECK(s.t <= static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(m)))) + 2);
    for (std::size_t i = 1; i < v.size(); ++i) {
      CHECK(v[i] == v[i - 1] - v[i - 1] / 2);
      CHECK(2 * v[i] >= v[i - 1]);
    }
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      CHECK(v[i - 1] - v[i] <= v[i]);
      CHECK(v[i] <= 3 * (v[i] - v[i + 1]));
    }
    CHECK(all_ok(check_invariants(s)));
  }
}

TEST_CASE("tau") {
  // cos 2x at 0: S_0 = S_1 = 0, S_2 = S_3 = 1, so sigma_{1,1} = 0, sigma_{3,1} = 1 and tau = 2.
  const auto c2 = compute_coefficients(GridFunction::from_evaluator([](double x) { return std::cos(2 * x); }, 64), 8);
  CHECK(tau(c2, 1, 1, 0.0).value == doctest::Approx(2.0).epsilon(1e-13));

  const auto g = find_function("abs").sample(1024);
  const auto c = compute_coefficients(g, 64);
  for (std::size_t n : {3, 10}) {
    const double x = 0.8;
    const double expect = c.a[n] * std::cos((n + 1.0) * x) + c.b[n] * std::sin((n + 1.0) * x);
    CHECK(tau(c, n, 0, x).value == doctest::Approx(expect).epsilon(1e-12).scale(1.0));
  }
  Rng rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = pick(rng, 1, 20);
    const std::size_t m = pick(rng, 0, n);
    const double x = uniform(rng, -kPi, kPi);
    const double k = (m + 1.0) * (vp_mean_by_kernel(g, n + m + 1, m, x) - vp_mean_by_kernel(g, n, m, x));
    CHECK(tau(c, n, m, x).value == doctest::Approx(k).epsilon(1e-7).scale(1.0));
  }
  const auto t = random_poly(rng, 3);
  const auto pc = compute_coefficients(sample_poly(t, 128), 24);
  CHECK(std::abs(tau(pc, 8, 5, 0.4).value) < 1e-10);
  CHECK_THROWS(tau(pc, 8, 9, 0.4));
  CHECK_THROWS(tau(pc, 20, 5, 0.4));
}

TEST_CASE("increasing sequence with all F zero") {
  const FQuery zero = [](std::size_t, std::size_t) { return 0.0; };
  const auto s = increasing_seq(zero, 10, 2);
  CHECK(s.values == std::vector<std::size_t>{10, 13, 16, 19, 22});
  CHECK(s.t == 4);
  CHECK(all_ok(check_invariants(s)));
  CHECK_THROWS(increasing_seq(zero, 3, 0));
  CHECK_THROWS(increasing_seq(zero, 3, 4));
}

TEST_CASE("increasing sequence on synthetic F") {
  // F decaying like 1/(d+1): halving needs the first index to roughly double.
  Rng rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const double a = uniform(rng, 0.5, 3.0);
    const double decay = uniform(rng, 0.5, 2.0);
    const FQuery F = [&](std::size_t d, std::size_t mu) {
      return a / std::pow(d + 1.0, decay) / (1.0 + 0.1 * static_cast<double>(mu));
    };
    const std::size_t n = pick(rng, 1, 40);
    const std::size_t m = pick(rng, 1, n);
    const auto s = increasing_seq(F, n, m);
    CAPTURE(n);
    CAPTURE(m);
    CHECK(s.values.front() == n);
    CHECK(s.values.back() >= 2 * n);
    CHECK(s.values.back() <= 2 * n + m);
    for (std::size_t i = 1; i < s.values.size(); ++i) CHECK(s.values[i] - s.values[i - 1] >= m + 1);
    CHECK(all_ok(check_invariants(s)));
    CHECK(s.halving_violations == 0);
  }
}

TEST_CASE("increasing sequence on a corpus function") {
  const auto g = find_function("abs").sample(1024);
  const BestApproxCache cache(g);
  std::map<std::pair<std::size_t, std::size_t>, double> memo;
  const FQuery F = [&](std::size_t d, std::size_t mu) {
    auto [it, fresh] = memo.try_emplace({d, mu}, 0.0);
    if (fresh) it->second = F_average(cache, d, mu, 0.0, LebesgueExponent::infinity(), WindowVariant::SupOverH).average;
    return it->second;
  };
  const auto s = increasing_seq(F, 8, 2);
  CHECK(s.values.back() >= 16);
  CHECK(s.values.back() <= 18);
  CHECK(all_ok(check_invariants(s)));
  const auto j = to_json(s);
  CHECK(j["values"].size() == s.values.size());
  CHECK(j["kind"] == "increasing");
}

TEST_CASE("decreasing sequence json") {
  const auto j = to_json(decreasing_seq(10));
  CHECK(j["values"] == nlohmann::json::array({10, 5, 3, 2, 1}));
  CHECK(j["t"] == 4);
}
