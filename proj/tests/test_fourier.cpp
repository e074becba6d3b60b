#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "vpa/corpus.hpp"
#include "vpa/fourier.hpp"

using namespace vpa;
using namespace vpa::test;

TEST_CASE("grid function basics") {
  const auto g = GridFunction::from_evaluator([](double x) { return std::sin(3.0 * x) + 0.25; }, 64);
  CHECK(g.size() == 64);
  for (std::ptrdiff_t j = 0; j < 64; ++j) {
    CHECK(g.samples()[static_cast<std::size_t>(j)] == g.evaluator()(g.node(j)));
    CHECK(g.sample(j + 64) == g.sample(j));
    CHECK(g.sample(j - 64) == g.sample(j));
  }
  CHECK_THROWS(GridFunction::from_samples(std::vector<double>(48, 0.0)));
  CHECK_THROWS(GridFunction::from_samples(std::vector<double>(8, 0.0)));
  CHECK_NOTHROW(GridFunction::from_samples(std::vector<double>(16, 0.0)));
}

TEST_CASE("exponent parsing") {
  CHECK(LebesgueExponent::parse("inf").is_infinite());
  CHECK(LebesgueExponent::parse("2.5").value() == 2.5);
  CHECK(LebesgueExponent::parse("1").to_string() == "1");
  CHECK_THROWS(LebesgueExponent::parse("0.5"));
  CHECK_THROWS(LebesgueExponent::parse("abc"));
}

TEST_CASE("coefficients of cos x, 1 and the sawtooth") {
  const auto c = compute_coefficients(GridFunction::from_evaluator([](double x) { return std::cos(x); }, 1024), 8);
  CHECK(c.a[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(c.a0) < 1e-12);
  for (std::size_t k = 1; k < 8; ++k) CHECK(std::abs(c.a[k]) < 1e-12);
  for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(c.b[k]) < 1e-12);

  const auto one = compute_coefficients(GridFunction::from_evaluator([](double) { return 1.0; }, 256), 8);
  CHECK(one.a0 == doctest::Approx(2.0).epsilon(1e-14));
  for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(one.a[k]) + std::abs(one.b[k]) < 1e-14);

  // (1/pi) int t sin(kt) dt = 2 (-1)^{k+1} / k; the trapezoid rule at the
  // jump converges like 1/N^2 relative to k.
  const auto saw = compute_coefficients(find_function("sawtooth").sample(16384), 8);
  for (std::size_t k = 1; k <= 8; ++k) {
    const double exact = 2.0 * ((k % 2) ? 1.0 : -1.0) / static_cast<double>(k);
    CHECK(saw.b[k - 1] == doctest::Approx(exact).epsilon(1e-6));
  }
}

TEST_CASE("coefficients agree with direct summation") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const auto& fns = default_corpus();
    const auto& f = fns[pick(rng, 0, fns.size() - 1)];
    const auto g = f.sample(256);
    const auto c = compute_coefficients(g, 64);
    for (std::size_t k : {std::size_t{0}, std::size_t{1}, std::size_t{7}, std::size_t{64}}) {
      double a = 0, b = 0;
      direct_coefficient(g, k, a, b);
      if (k == 0) {
        CHECK(c.a0 == doctest::Approx(a).epsilon(1e-12).scale(1.0));
      } else {
        CHECK(c.a[k - 1] == doctest::Approx(a).epsilon(1e-12).scale(1.0));
        CHECK(c.b[k - 1] == doctest::Approx(b).epsilon(1e-12).scale(1.0));
      }
    }
  }
}

TEST_CASE("aliasing guard") {
  const auto g = GridFunction::from_samples(std::vector<double>(64, 1.0));
  CHECK_NOTHROW(compute_coefficients(g, 16));
  CHECK_THROWS_AS(compute_coefficients(g, 17), AliasingError);
}

TEST_CASE("partial sums") {
  const auto sg = find_function("sawtooth").sample(16384);
  const auto saw = compute_coefficients(sg, 4);
  const auto s0 = partial_sum(saw, 0);
  CHECK(s0.degree == 0);
  CHECK(s0(0.7) == doctest::Approx(saw.a0 / 2));
  const auto s2 = partial_sum(saw, 2);
  for (double x : {-2.0, -0.5, 0.3, 1.9}) {
    CHECK(s2(x) == doctest::Approx(direct_partial_sum(sg, 2, x)).epsilon(1e-11).scale(1.0));
    // The jump sample at -pi shifts each cosine coefficient by O(1/N).
    CHECK(s2(x) == doctest::Approx(2 * std::sin(x) - std::sin(2 * x)).epsilon(3e-3).scale(1.0));
  }
  const auto cosx = compute_coefficients(GridFunction::from_evaluator([](double x) { return std::cos(x); }, 64), 4);
  CHECK(partial_sum(cosx, 1)(0.4) == doctest::Approx(std::cos(0.4)).epsilon(1e-13));
  CHECK_THROWS(partial_sum(cosx, 5));
}

TEST_CASE("Dirichlet kernel") {
  for (std::size_t k = 0; k < 6; ++k) CHECK(dirichlet_kernel(k, 0.0) == doctest::Approx(k + 0.5));
  CHECK(dirichlet_kernel(1, kPi / 2) == doctest::Approx(0.5).epsilon(1e-14));
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const std::size_t k = pick(rng, 0, 20);
    const double t = uniform(rng, -kPi, kPi);
    double sum = 0.5;
    for (std::size_t j = 1; j <= k; ++j) sum += std::cos(static_cast<double>(j) * t);
    CHECK(dirichlet_kernel(k, t) == doctest::Approx(sum).epsilon(1e-10).scale(1.0));
  }
  // Near the singularity both forms must agree.
  CHECK(dirichlet_kernel(5, 1e-9) == doctest::Approx(5.5).epsilon(1e-12));
  for (std::size_t k : {0, 3, 17}) {
    double integral = 0.0;
    const std::size_t n = 256;
    for (std::size_t j = 0; j < n; ++j) integral += dirichlet_kernel(k, -kPi + kTwoPi * j / n);
    CHECK(integral * kTwoPi / n / kPi == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("de la Vallee-Poussin kernel") {
  CHECK(vp_kernel(1, 1, 0.0) == doctest::Approx(1.0));
  for (double t : {-1.0, 0.2, 2.5}) CHECK(vp_kernel(6, 0, t) == doctest::Approx(dirichlet_kernel(6, t)));
  CHECK_THROWS(vp_kernel(2, 3, 0.1));
  for (std::size_t n : {1, 5, 12}) {
    for (std::size_t m = 0; m <= n; m += 2) {
      double integral = 0.0;
      const std::size_t N = 512;
      for (std::size_t j = 0; j < N; ++j) integral += vp_kernel(n, m, -kPi + kTwoPi * j / N);
      CHECK(integral * kTwoPi / N / kPi == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("vp_mean examples and weights") {
  const auto cosx = compute_coefficients(GridFunction::from_evaluator([](double x) { return std::cos(x); }, 64), 8);
  CHECK(vp_mean(cosx, 1, 1)(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(vp_mean_by_kernel(GridFunction::from_evaluator([](double x) { return std::cos(x); }, 64), 1, 1, 0.0) ==
        doctest::Approx(0.5).epsilon(1e-8));
  CHECK(vp_mean_by_kernel(GridFunction::from_evaluator([](double) { return 1.0; }, 64), 5, 2, 0.3) ==
        doctest::Approx(1.0).epsilon(1e-12));

  for (std::size_t n = 1; n <= 20; ++n) {
    for (std::size_t k = 1; k <= n; ++k) CHECK(vp_weight(n, n, k) == static_cast<double>(n + 1 - k) / (n + 1));
    CHECK(vp_weight(n, 0, n) == 1.0);
    CHECK(vp_weight(n, 0, n + 1) == 0.0);
  }
  CHECK_THROWS(vp_mean(cosx, 2, 3));
  CHECK_THROWS(vp_mean(cosx, 9, 1));
}

TEST_CASE("vp_mean equals the average of partial sums") {
  Rng rng(5);
  const auto g = find_function("abs").sample(512);
  const auto c = compute_coefficients(g, 40);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = pick(rng, 0, 40);
    const std::size_t m = pick(rng, 0, n);
    const double x = uniform(rng, -kPi, kPi);
    double avg = 0.0;
    for (std::size_t k = n - m; k <= n; ++k) avg += partial_sum(c, k)(x);
    avg /= static_cast<double>(m + 1);
    CHECK(vp_mean(c, n, m)(x) == doctest::Approx(avg).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("polynomial reproduction property") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = pick(rng, 0, 8);
    const auto t = random_poly(rng, d);
    const auto g = sample_poly(t, 128);
    const auto c = compute_coefficients(g, 32);
    const std::size_t n = pick(rng, d, 32);
    const std::size_t m = pick(rng, 0, n - d);
    const auto s = vp_mean(c, n, m).on_grid(128);
    for (std::size_t j = 0; j < 128; ++j) CHECK(std::abs(s[j] - g.samples()[j]) <= 1e-10);
  }
}

TEST_CASE("vp_mean is linear") {
  Rng rng(9);
  const auto f = find_function("expcos").sample(256);
  const auto h = find_function("sinpow").sample(256);
  for (int trial = 0; trial < 5; ++trial) {
    const double alpha = uniform(rng, -2, 2), beta = uniform(rng, -2, 2);
    const auto cf = compute_coefficients(f, 32);
    const auto ch = compute_coefficients(h, 32);
    const auto cc = compute_coefficients(GridFunction::combine(alpha, f, beta, h), 32);
    const auto sf = vp_mean(cf, 24, 6), sh = vp_mean(ch, 24, 6), sc = vp_mean(cc, 24, 6);
    for (std::size_t k = 0; k < 24; ++k) {
      CHECK(sc.a[k] == doctest::Approx(alpha * sf.a[k] + beta * sh.a[k]).epsilon(1e-12).scale(1.0));
      CHECK(sc.b[k] == doctest::Approx(alpha * sf.b[k] + beta * sh.b[k]).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("coefficient and kernel forms agree on a random polynomial") {
  Rng rng(13);
  const auto t = random_poly(rng, 5);
  const auto g = sample_poly(t, 256);
  const auto c = compute_coefficients(g, 16);
  const auto s = vp_mean(c, 12, 4);
  for (int i = 0; i < 64; ++i) {
    const double x = uniform(rng, -kPi, kPi);
    CHECK(vp_mean_by_kernel(g, 12, 4, x) == doctest::Approx(s(x)).epsilon(1e-8).scale(1.0));
  }
}
