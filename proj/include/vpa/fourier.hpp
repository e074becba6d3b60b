#pragma once

// Fourier analysis of 2*pi-periodic functions sampled on a uniform grid.
//
// Grid convention: x_j = -pi + 2*pi*j/N, j = 0..N-1, N a power of two.
// Coefficient convention: f ~ a0/2 + sum_{k>=1} (a_k cos kx + b_k sin kx).

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vpa {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr std::size_t kDefaultSamples = 16384;

/// Raised when a coefficient request would alias on the sample grid.
class AliasingError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Maps x into [-pi, pi).
double wrap_angle(double x);

/// Exponent p of the space X^p: a finite real >= 1, or infinity (X^p = C).
class LebesgueExponent {
 public:
  static LebesgueExponent finite(double p);
  static LebesgueExponent infinity() { return LebesgueExponent(); }

  bool is_infinite() const { return infinite_; }
  /// Finite value; throws for the infinite exponent.
  double value() const;

  /// "1", "2.5", "inf".
  std::string to_string() const;
  /// Accepts a decimal number >= 1 or one of "inf", "infinity".
  static LebesgueExponent parse(const std::string& text);

  friend bool operator==(const LebesgueExponent&, const LebesgueExponent&) = default;
  friend auto operator<=>(const LebesgueExponent&, const LebesgueExponent&) = default;

 private:
  LebesgueExponent() = default;
  explicit LebesgueExponent(double p) : infinite_(false), p_(p) {}

  bool infinite_ = true;
  double p_ = 0.0;
};

struct TrigPolynomial;

/// A 2*pi-periodic real function carried by uniform samples, optionally
/// together with an exact point-evaluation rule.
///
/// When an evaluator is present the samples are produced from it, so
/// samples[j] == evaluator(x_j) holds exactly. Off-grid evaluation uses the
/// evaluator if present and linear interpolation otherwise.
class GridFunction {
 public:
  using Evaluator = std::function<double(double)>;

  /// Samples `evaluator` on an N-point grid. The evaluator is only ever
  /// called with arguments in [-pi, pi).
  static GridFunction from_evaluator(Evaluator evaluator, std::size_t n = kDefaultSamples);
  static GridFunction from_samples(std::vector<double> samples);

  std::size_t size() const { return samples_.size(); }
  double spacing() const { return kTwoPi / static_cast<double>(samples_.size()); }
  std::span<const double> samples() const { return samples_; }
  bool has_evaluator() const { return static_cast<bool>(evaluator_); }
  const Evaluator& evaluator() const { return evaluator_; }

  /// Position of node j (unwrapped, any integer j).
  double node(std::ptrdiff_t j) const { return -kPi + spacing() * static_cast<double>(j); }
  /// Sample at node j with periodic wrap-around.
  double sample(std::ptrdiff_t j) const;
  /// Fractional node coordinate of x, (x + pi) / spacing, not wrapped.
  double node_coordinate(double x) const { return (x + kPi) / spacing(); }

  /// Exact value if an evaluator exists, otherwise linear interpolation.
  double operator()(double x) const;
  double interpolate(double x) const;

  /// Pointwise alpha*f + beta*g on a shared grid; evaluators compose when
  /// both operands carry one.
  static GridFunction combine(double alpha, const GridFunction& f, double beta, const GridFunction& g);

  /// f - t on the same grid. Off-grid values use the evaluator (or
  /// interpolation) of f minus t(x); at nodes they equal the samples.
  GridFunction minus(const TrigPolynomial& t) const;

 private:
  GridFunction(std::vector<double> samples, Evaluator evaluator);

  std::vector<double> samples_;
  Evaluator evaluator_;
};

/// Element of H_n: a0/2 + sum_{k=1}^{n} (a_k cos kx + b_k sin kx).
struct TrigPolynomial {
  std::size_t degree = 0;
  double a0 = 0.0;
  std::vector<double> a;  // a_1..a_n
  std::vector<double> b;  // b_1..b_n

  static TrigPolynomial zero(std::size_t degree);

  double operator()(double x) const;
  /// Values at all nodes of an N-point grid (requires degree < N/2).
  std::vector<double> on_grid(std::size_t n) const;
  /// Zero-padded copy of degree `degree` >= this->degree.
  TrigPolynomial padded(std::size_t degree) const;
  double max_abs_coefficient() const;
};

struct FourierCoefficients {
  std::size_t kmax = 0;
  double a0 = 0.0;
  std::vector<double> a;  // a_1..a_kmax
  std::vector<double> b;  // b_1..b_kmax

  TrigPolynomial truncated(std::size_t k) const;
};

/// Trapezoid-rule Fourier coefficients up to kmax. Requires N >= 4*kmax;
/// throws AliasingError otherwise.
FourierCoefficients compute_coefficients(const GridFunction& f, std::size_t kmax);
/// Same from a raw sample vector on the standard grid.
FourierCoefficients coefficients_from_samples(std::span<const double> samples, std::size_t kmax);

/// S_k f.
TrigPolynomial partial_sum(const FourierCoefficients& c, std::size_t k);

/// D_k(t) = sin((2k+1)t/2) / (2 sin(t/2)); cosine-sum form near t = 0 mod 2*pi.
double dirichlet_kernel(std::size_t k, double t);

/// V_{n,m}(t) = (1/(m+1)) sum_{k=n-m}^{n} D_k(t). Requires m <= n.
double vp_kernel(std::size_t n, std::size_t m, double t);

/// Weight applied to harmonic k by sigma_{n,m}: 1 for k <= n-m,
/// (n+1-k)/(m+1) for n-m < k <= n, 0 beyond n.
double vp_weight(std::size_t n, std::size_t m, std::size_t k);

/// sigma_{n,m} f = (1/(m+1)) sum_{k=n-m}^{n} S_k f, in coefficient form.
TrigPolynomial vp_mean(const FourierCoefficients& c, std::size_t n, std::size_t m);

/// sigma_{n,m} f(x) by trapezoid convolution (1/pi) int f(u) V_{n,m}(u - x) du
/// over the sample grid. Independent of the coefficient route.
double vp_mean_by_kernel(const GridFunction& f, std::size_t n, std::size_t m, double x);

}  // namespace vpa
