#pragma once

// Generators and brute-force oracles shared by the unit tests. The oracles
// deliberately avoid the library's own code paths (no FFT, no prefix sums).

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "vpa/fourier.hpp"

namespace vpa::test {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Random element of H_d with coefficients in [-1, 1].
inline TrigPolynomial random_poly(Rng& rng, std::size_t d) {
  TrigPolynomial t = TrigPolynomial::zero(d);
  t.a0 = uniform(rng, -1.0, 1.0);
  for (std::size_t k = 0; k < d; ++k) {
    t.a[k] = uniform(rng, -1.0, 1.0);
    t.b[k] = uniform(rng, -1.0, 1.0);
  }
  return t;
}

inline GridFunction sample_poly(const TrigPolynomial& t, std::size_t n) {
  return GridFunction::from_evaluator([t](double x) { return t(x); }, n);
}

inline double sawtooth(double x) { return wrap_angle(x); }

/// (1/pi) sum_j f(x_j) cos(k x_j) h by direct summation.
inline void direct_coefficient(const GridFunction& f, std::size_t k, double& a, double& b) {
  a = 0.0;
  b = 0.0;
  const auto s = f.samples();
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double x = f.node(static_cast<std::ptrdiff_t>(j));
    a += s[j] * std::cos(static_cast<double>(k) * x);
    b += s[j] * std::sin(static_cast<double>(k) * x);
  }
  a *= f.spacing() / kPi;
  b *= f.spacing() / kPi;
}

/// S_k f(x) from direct coefficients.
inline double direct_partial_sum(const GridFunction& f, std::size_t k, double x) {
  double a = 0.0, b = 0.0;
  direct_coefficient(f, 0, a, b);
  double v = a / 2.0;
  for (std::size_t j = 1; j <= k; ++j) {
    direct_coefficient(f, j, a, b);
    v += a * std::cos(static_cast<double>(j) * x) + b * std::sin(static_cast<double>(j) * x);
  }
  return v;
}

/// Composite Simpson on [lo, hi] with `panels` (even) intervals.
template <class F>
double simpson(F&& g, double lo, double hi, std::size_t panels = 20000) {
  const double h = (hi - lo) / static_cast<double>(panels);
  double s = g(lo) + g(hi);
  for (std::size_t i = 1; i < panels; ++i) s += g(lo + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// ((1/(2d)) int_{x-d}^{x+d} |g|^p)^(1/p) by Simpson, for a smooth evaluator.
template <class F>
double fixed_norm_oracle(F&& g, double x, double d, double p) {
  const double v = simpson([&](double t) { return std::pow(std::abs(g(t)), p); }, x - d, x + d);
  return std::pow(v / (2.0 * d), 1.0 / p);
}

}  // namespace vpa::test
