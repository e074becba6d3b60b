#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "vpa/corpus.hpp"
#include "vpa/local_norms.hpp"

using namespace vpa;
using namespace vpa::test;

namespace {

const LebesgueExponent kInf = LebesgueExponent::infinity();
const LebesgueExponent kTwo = LebesgueExponent::finite(2);

GridFunction identity(std::size_t n = 4096) {
  return GridFunction::from_evaluator([](double x) { return x; }, n);
}

}  // namespace

TEST_CASE("delta operator") {
  const auto f = identity();
  CHECK(delta_op(f, 0.1, 0.2) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(delta_op(f, 0.7, 0.0) == 0.0);
  const auto one = find_function("constant-one").sample(64);
  CHECK(delta_op(one, 1.0, 0.4) == 0.0);
  // Without an evaluator the difference comes from linear interpolation.
  const auto g = GridFunction::from_samples(std::vector<double>(f.samples().begin(), f.samples().end()));
  CHECK(delta_op(g, 0.1, 0.2) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("windowed norm examples") {
  const auto one = find_function("constant-one").sample(256);
  for (auto v : {WindowVariant::SupOverH, WindowVariant::FixedDelta}) {
    for (auto p : {LebesgueExponent::finite(1), kTwo, LebesgueExponent::finite(3.5), kInf}) {
      CHECK(windowed_norm(one, {0.3, 0.7, p, v}) == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  const auto f = identity();
  CHECK(windowed_norm(f, {0.0, 0.5, kInf, WindowVariant::FixedDelta}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(windowed_norm(f, {0.0, 0.5, kInf, WindowVariant::SupOverH}) == doctest::Approx(0.5).epsilon(1e-14));
  // Trapezoid on a linear-squared integrand: O(h^2) error.
  CHECK(windowed_norm(f, {0.0, 0.3, kTwo, WindowVariant::FixedDelta}) ==
        doctest::Approx(0.3 / std::sqrt(3.0)).epsilon(1e-5));
  CHECK(windowed_norm(f, {0.4, 0.0, kTwo, WindowVariant::FixedDelta}) == doctest::Approx(0.4));
  CHECK_THROWS(windowed_norm(f, {0.0, -0.1, kTwo, WindowVariant::FixedDelta}));
  CHECK_THROWS(windowed_norm(f, {0.0, 3.5, kTwo, WindowVariant::FixedDelta}));
}

TEST_CASE("fixed norm matches Simpson on smooth functions") {
  Rng rng(21);
  const auto& expcos = find_function("expcos");
  const auto g = expcos.sample(16384);
  for (int trial = 0; trial < 10; ++trial) {
    const double x = uniform(rng, -kPi, kPi);
    const double d = uniform(rng, 0.05, kPi);
    const double p = uniform(rng, 1.0, 4.0);
    const double oracle = fixed_norm_oracle(expcos.evaluator, x, d, p);
    const double got = windowed_norm(g, {x, d, LebesgueExponent::finite(p), WindowVariant::FixedDelta});
    CHECK(got == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("sup variant is monotone in delta and dominates the fixed variant") {
  Rng rng(23);
  for (const auto& cf : default_corpus()) {
    const auto g = cf.sample(1024);
    for (int trial = 0; trial < 3; ++trial) {
      const double x = uniform(rng, -kPi, kPi);
      const auto p = trial == 0 ? kInf : LebesgueExponent::finite(uniform(rng, 1.0, 3.0));
      const WindowProfile prof(g, x, p);
      double prev = 0.0;
      for (int i = 1; i <= 20; ++i) {
        const double d = kPi * i / 20.0;
        const double s = prof.sup(d);
        CHECK(s >= prev - 1e-15);
        CHECK(s >= prof.fixed(d) - 1e-15);
        prev = s;
        // The profile and the one-shot entry point agree.
        CHECK(windowed_norm(g, {x, d, p, WindowVariant::SupOverH}) == doctest::Approx(s).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("sup variant dominates every smaller radius") {
  Rng rng(25);
  for (const auto& cf : default_corpus()) {
    const auto g = cf.sample(512);
    for (int trial = 0; trial < 4; ++trial) {
      const double x = trial % 2 ? g.node(static_cast<std::ptrdiff_t>(pick(rng, 0, 511))) : uniform(rng, -kPi, kPi);
      const auto p = trial == 3 ? kInf : LebesgueExponent::finite(uniform(rng, 1.0, 3.0));
      const WindowProfile prof(g, x, p);
      std::vector<double> ds(400);
      for (double& d : ds) d = uniform(rng, 0.0, kPi);
      std::sort(ds.begin(), ds.end());
      double prev = prof.sup(0.0);
      for (double d : ds) {
        const double s = prof.sup(d);
        CAPTURE(cf.name);
        CAPTURE(d);
        CHECK(s >= prev * (1 - 1e-13));
        prev = s;
        for (int k = 0; k < 3; ++k) CHECK(prof.fixed(uniform(rng, 0.0, d)) <= s * (1 + 1e-12) + 1e-15);
      }
    }
  }
}

TEST_CASE("pointwise modulus") {
  const auto f = identity();
  for (double d : {0.1, 0.5, 2.0}) {
    CHECK(pointwise_modulus(f, 0.2, d, kInf, WindowVariant::SupOverH) == doctest::Approx(d).epsilon(1e-13));
  }
  CHECK(pointwise_modulus(f, 0.2, 0.0, kTwo, WindowVariant::SupOverH) == 0.0);
  CHECK(pointwise_modulus(find_function("constant-one").sample(64), 0.2, 1.0, kTwo, WindowVariant::FixedDelta) ==
        0.0);
  // Homogeneity.
  const auto g = find_function("sinpow").sample(2048);
  const auto g3 = GridFunction::combine(-3.0, g, 0.0, g);
  for (double d : {0.2, 1.3}) {
    for (auto p : {kInf, kTwo}) {
      const double a = pointwise_modulus(g, 0.5, d, p, WindowVariant::SupOverH);
      CHECK(pointwise_modulus(g3, 0.5, d, p, WindowVariant::SupOverH) == doctest::Approx(3 * a).epsilon(1e-12));
    }
  }
}

TEST_CASE("averaged modulus") {
  const auto f = identity(16384);
  CHECK(averaged_modulus(f, 0.0, 3, kInf, WindowVariant::SupOverH) ==
        doctest::Approx(25.0 / 48.0 * kPi).epsilon(1e-12));
  const auto g = find_function("abs").sample(1024);
  CHECK(averaged_modulus(g, 0.3, 0, kTwo, WindowVariant::SupOverH) ==
        doctest::Approx(pointwise_modulus(g, 0.3, kPi, kTwo, WindowVariant::SupOverH)));
  const auto t = modulus_table(g, 0.3, 7, kTwo, WindowVariant::SupOverH);
  REQUIRE(t.values.size() == 8);
  for (std::size_t k = 1; k < t.values.size(); ++k) CHECK(t.values[k] <= t.values[k - 1] + 1e-15);
  CHECK(averaged_modulus(find_function("constant-one").sample(64), 0.0, 5, kInf, WindowVariant::FixedDelta) == 0.0);
}

TEST_CASE("global modulus") {
  const auto c = find_function("cosx").sample(4096);
  for (double d : {0.3, 1.0, 2.0, kPi}) {
    // Maximised over grid shifts: exact up to the position grid.
    CHECK(global_modulus(c, d, kInf) == doctest::Approx(2 * std::sin(d / 2)).epsilon(1e-6));
  }
  CHECK(averaged_global_modulus(c, 1, kInf) == doctest::Approx(1.0 + std::sqrt(2.0) / 2).epsilon(1e-6));
  CHECK(global_modulus(find_function("constant-one").sample(64), 1.0, kTwo) == 0.0);
  CHECK(averaged_global_modulus(c, 0, kTwo) == doctest::Approx(global_modulus(c, kPi, kTwo)));

  // Sawtooth: brute force over shift and position.
  const auto saw = find_function("sawtooth").sample(256);
  for (double d : {0.1, 1.0}) {
    double best = 0.0;
    for (std::ptrdiff_t s = 1; saw.spacing() * s <= d + 1e-12; ++s) {
      for (std::ptrdiff_t j = 0; j < 256; ++j) best = std::max(best, std::abs(saw.sample(j + s) - saw.sample(j)));
    }
    CHECK(global_modulus(saw, d, kInf) == doctest::Approx(best).epsilon(1e-12));
    CHECK(best > kTwoPi - d - 1e-9);
  }
  CHECK_THROWS(global_modulus(c, 0.0, kInf));
}

TEST_CASE("local moduli are bounded by the global one") {
  Rng rng(29);
  for (const auto& cf : default_corpus()) {
    const auto g = cf.sample(512);
    for (auto p : {kInf, kTwo}) {
      const GlobalModulusProfile omega(g, kInf);
      for (int trial = 0; trial < 5; ++trial) {
        const double x = g.node(static_cast<std::ptrdiff_t>(pick(rng, 0, 511)));
        const double d = uniform(rng, 0.05, kPi);
        CHECK(pointwise_modulus(g, x, d, p, WindowVariant::SupOverH) <= omega(d) + 1e-6);
      }
    }
  }
}

TEST_CASE("grid norm") {
  std::vector<double> s(64, 2.0);
  CHECK(grid_norm(s, kInf) == 2.0);
  CHECK(grid_norm(s, kTwo) == doctest::Approx(2.0 * std::sqrt(kTwoPi)));
  CHECK(grid_norm(s, LebesgueExponent::finite(1)) == doctest::Approx(2.0 * kTwoPi));
}
