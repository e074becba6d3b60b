#include "vpa/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace vpa {

namespace {

TrigPolynomial poly5_coefficients() {
  TrigPolynomial t = TrigPolynomial::zero(5);
  t.a0 = 0.6;
  t.a = {1.0, 0.0, 0.25, 0.0, -0.1};
  t.b = {0.0, -0.5, 0.0, 0.2, 0.15};
  return t;
}

std::vector<CorpusFunction> build_registry() {
  std::vector<CorpusFunction> v;

  const TrigPolynomial p5 = poly5_coefficients();
  v.push_back({"poly5", [p5](double x) { return p5(x); }, Smoothness::Polynomial, 1.0, {}, p5});

  v.push_back({"abs", [](double x) { return std::abs(x); }, Smoothness::Lipschitz, 1.0, {}, std::nullopt});

  // Value -pi at the jump: the left end of [-pi, pi), not the midpoint.
  v.push_back({"sawtooth", [](double x) { return x; }, Smoothness::BoundedVariationWithJump, 1.0, {-kPi},
               std::nullopt});

  v.push_back({"weierstrass",
               [](double x) {
                 double s = 0.0;
                 for (int j = 0; j <= 8; ++j) s += std::pow(2.0, -0.5 * j) * std::cos(std::ldexp(1.0, j) * x);
                 return s;
               },
               Smoothness::Hoelder, 0.5, {}, std::nullopt});

  v.push_back({"expcos", [](double x) { return std::exp(std::cos(x)); }, Smoothness::Analytic, 1.0, {},
               std::nullopt});

  v.push_back({"sinpow", [](double x) { return std::pow(std::abs(std::sin(x)), 1.5); }, Smoothness::Hoelder, 1.5,
               {}, std::nullopt});

  v.push_back({"step", [](double x) { return x >= 1.0 ? 1.0 : 0.0; }, Smoothness::BoundedVariationWithJump, 1.0,
               {-kPi, 1.0}, std::nullopt});

  TrigPolynomial one = TrigPolynomial::zero(0);
  one.a0 = 2.0;
  v.push_back({"constant-one", [](double) { return 1.0; }, Smoothness::Polynomial, 1.0, {}, one});

  TrigPolynomial c1 = TrigPolynomial::zero(1);
  c1.a[0] = 1.0;
  v.push_back({"cosx", [](double x) { return std::cos(x); }, Smoothness::Polynomial, 1.0, {}, c1});
  return v;
}

const std::vector<CorpusFunction>& registry() {
  static const std::vector<CorpusFunction> r = build_registry();
  return r;
}

}  // namespace

bool CorpusFunction::continuous_at(double x, double margin) const {
  for (double j : jumps) {
    if (std::abs(wrap_angle(x - j)) <= margin) return false;
  }
  return true;
}

std::string CorpusFunction::tag() const {
  switch (smoothness) {
    case Smoothness::Polynomial: return "polynomial";
    case Smoothness::Lipschitz: return "lipschitz";
    case Smoothness::Hoelder: {
      char buf[32];
      auto res = std::to_chars(buf, buf + sizeof buf, hoelder_exponent);
      return "hoelder(" + std::string(buf, res.ptr) + ")";
    }
    case Smoothness::BoundedVariationWithJump: return "bounded-variation-with-jump";
    case Smoothness::Analytic: return "analytic";
  }
  return "?";
}

GridFunction CorpusFunction::sample(std::size_t n) const { return GridFunction::from_evaluator(evaluator, n); }

const std::vector<CorpusFunction>& default_corpus() {
  static const std::vector<CorpusFunction> c(registry().begin(), registry().begin() + 7);
  return c;
}

const CorpusFunction& find_function(std::string_view name) {
  const auto& r = registry();
  auto it = std::find_if(r.begin(), r.end(), [name](const CorpusFunction& f) { return f.name == name; });
  if (it == r.end()) throw UnknownFunction("unknown function '" + std::string(name) + "'");
  return *it;
}

std::vector<std::string> registry_names() {
  std::vector<std::string> out;
  for (const auto& f : registry()) out.push_back(f.name);
  return out;
}

}  // namespace vpa
