#pragma once

// Named test functions on [-pi, pi), extended 2*pi-periodically.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vpa/fourier.hpp"

namespace vpa {

enum class Smoothness { Polynomial, Lipschitz, Hoelder, BoundedVariationWithJump, Analytic };

class UnknownFunction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CorpusFunction {
  std::string name;
  std::function<double(double)> evaluator;  // called with x in [-pi, pi)
  Smoothness smoothness = Smoothness::Analytic;
  double hoelder_exponent = 1.0;           // meaningful for Hoelder
  std::vector<double> jumps;               // discontinuities in [-pi, pi)
  std::optional<TrigPolynomial> polynomial;  // exact form of polynomial members

  bool continuous() const { return jumps.empty(); }
  /// False within `margin` of a declared jump (periodically).
  bool continuous_at(double x, double margin = 1e-9) const;
  /// Smoothness tag, e.g. "lipschitz" or "hoelder(0.5)".
  std::string tag() const;
  GridFunction sample(std::size_t n = kDefaultSamples) const;
};

/// poly5, abs, sawtooth, weierstrass, expcos, sinpow, step.
const std::vector<CorpusFunction>& default_corpus();

/// Default corpus plus "constant-one" and "cosx". Throws UnknownFunction.
const CorpusFunction& find_function(std::string_view name);
std::vector<std::string> registry_names();

}  // namespace vpa
