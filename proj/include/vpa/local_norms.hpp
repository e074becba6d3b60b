#pragma once

// Pointwise windowed norms, the difference operator and moduli of continuity.
//
// FixedDelta at radius d, finite p:  ((1/(2d)) int_{x-d}^{x+d} |g|^p)^(1/p)
// FixedDelta at radius d, p = inf:   sup_{0<|t|<=d} |g(x+t)|
// SupOverH at radius d:              max over h in H(d) of FixedDelta(h)
// Radius 0 (either variant):         |g(x)|
//
// H(d) holds every distance from x to a grid node that is <= d, plus d.
// Integrals use the trapezoid rule on the grid nodes inside the window
// together with the two window endpoints.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "vpa/fourier.hpp"

namespace vpa {

enum class WindowVariant { SupOverH, FixedDelta };

std::string_view to_string(WindowVariant v);

struct WindowSpec {
  double x = 0.0;
  double delta = 0.0;
  LebesgueExponent p = LebesgueExponent::infinity();
  WindowVariant variant = WindowVariant::SupOverH;

  /// Throws std::invalid_argument unless 0 <= delta <= pi.
  void validate() const;
};

/// Nodes of [x-h, x+h] plus its endpoints, with trapezoid weights.
struct WindowSamples {
  std::vector<double> positions;  // unwrapped abscissae, ascending
  std::vector<double> values;     // g at each position
  std::vector<double> weights;    // trapezoid weights, summing to 2h
};

/// Samples g on [x-h, x+h]. Endpoint values come from the evaluator when
/// present, otherwise from linear interpolation; endpoints that coincide
/// with nodes use the node sample.
WindowSamples sample_window(const GridFunction& g, double x, double h);

/// Windowed norms of (g - shift) around one centre, for every radius.
///
/// Construction is O(N); each query afterwards is O(1) apart from at most
/// two off-grid evaluations of g.
class WindowProfile {
 public:
  WindowProfile(const GridFunction& g, double x, LebesgueExponent p, double shift = 0.0);

  double centre() const { return x_; }
  const LebesgueExponent& exponent() const { return p_; }

  /// ||g - shift||°_{x,h}.
  double fixed(double h) const;
  /// ||g - shift||_{x,delta}: sup of fixed(h) over 0 < h <= delta.
  double sup(double delta) const;
  double norm(double delta, WindowVariant v) const {
    return v == WindowVariant::SupOverH ? sup(delta) : fixed(delta);
  }
  /// |g(x) - shift|.
  double at_centre() const;

 private:
  double value_at(double u) const;
  // |g - shift|^p linearly interpolated at node coordinate s.
  double phi_at(double s) const;
  // Window mean of phi over radius h; phi at the centre for h = 0.
  double average(double h) const;
  double root(double avg) const;
  // Max of average() over [from, to] where no node distance lies inside.
  double piece_max(double from, double to) const;
  double power(double v) const;
  double integral(double h) const;
  std::size_t count_within(double h) const;

  const GridFunction* g_;
  double x_;
  LebesgueExponent p_;
  double shift_;
  double s_;                        // node coordinate of x
  std::ptrdiff_t base_;             // first unwrapped node index held
  std::vector<double> phi_;         // |g - shift|^p at nodes base_.. (|.| for p = inf)
  std::vector<double> cumulative_;  // trapezoid prefix integrals of phi_
  std::vector<double> distances_;   // node distances in (0, pi], ascending
  std::vector<double> running_max_; // p = inf: node max; else max average() up to distances_[i]
};

/// Global X^p norm over Q of grid samples: (h sum |g_j|^p)^(1/p), or max |g_j|.
double grid_norm(std::span<const double> samples, const LebesgueExponent& p);

/// Delta_x f(t) = f(x+t) - f(x).
double delta_op(const GridFunction& f, double x, double t);

/// ||f||_{X^p,x,delta} or ||f||°_{X^p,x,delta} depending on the variant.
double windowed_norm(const GridFunction& f, const WindowSpec& w);

/// w_x f(delta) (SupOverH) or w°_x f(delta) (FixedDelta).
double pointwise_modulus(const GridFunction& f, double x, double delta, LebesgueExponent p,
                         WindowVariant variant);

/// w-values at delta_k = pi/(k+1), k = 0..n.
struct ModulusTable {
  std::size_t n = 0;
  double x = 0.0;
  LebesgueExponent p = LebesgueExponent::infinity();
  WindowVariant variant = WindowVariant::SupOverH;
  std::vector<double> values;

  double delta(std::size_t k) const { return kPi / static_cast<double>(k + 1); }
  double mean() const;
};

ModulusTable modulus_table(const GridFunction& f, double x, std::size_t n, LebesgueExponent p,
                           WindowVariant variant);

/// Omega_x f(pi/(n+1)) or Omega°_x f(pi/(n+1)).
double averaged_modulus(const GridFunction& f, double x, std::size_t n, LebesgueExponent p,
                        WindowVariant variant);

/// omega f(delta)_{X^p} = sup_{0<|h|<=delta} ||f(.+h) - f(.)||_{X^p}, with h
/// ranging over grid shifts up to delta and delta itself.
double global_modulus(const GridFunction& f, double delta, LebesgueExponent p);

/// omega f over all radii, for repeated queries on one function.
class GlobalModulusProfile {
 public:
  GlobalModulusProfile(const GridFunction& f, LebesgueExponent p);
  double operator()(double delta) const;

 private:
  double shifted_norm(double h) const;

  const GridFunction* f_;
  LebesgueExponent p_;
  std::vector<double> running_max_;  // index k: max over shifts 1..k nodes
};

/// Omega f(pi/(n+1)) = (1/(n+1)) sum_k omega f(pi/(k+1)).
double averaged_global_modulus(const GridFunction& f, std::size_t n, LebesgueExponent p);

}  // namespace vpa
