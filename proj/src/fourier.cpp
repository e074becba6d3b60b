#include "vpa/fourier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>

#include "vpa/dft.hpp"

namespace vpa {

namespace {

constexpr double kKernelSingular = 1e-8;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

double wrap_angle(double x) {
  if (x >= -kPi && x < kPi) return x;
  double w = x - kTwoPi * std::floor((x + kPi) / kTwoPi);
  // floor() can land one period off when x + pi is within an ulp of a multiple.
  if (w >= kPi) w -= kTwoPi;
  if (w < -kPi) w += kTwoPi;
  return w;
}

// ---------------------------------------------------------------- exponent

LebesgueExponent LebesgueExponent::finite(double p) {
  if (!std::isfinite(p) || p < 1.0) {
    throw std::invalid_argument("LebesgueExponent: finite p must satisfy p >= 1");
  }
  return LebesgueExponent(p);
}

double LebesgueExponent::value() const {
  if (infinite_) throw std::logic_error("LebesgueExponent: value() of infinite exponent");
  return p_;
}

std::string LebesgueExponent::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, p_);
  return std::string(buf, res.ptr);
}

LebesgueExponent LebesgueExponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  double p = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), p);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("LebesgueExponent: cannot parse '" + text + "'");
  }
  return finite(p);
}

// ----------------------------------------------------------- grid function

GridFunction::GridFunction(std::vector<double> samples, Evaluator evaluator)
    : samples_(std::move(samples)), evaluator_(std::move(evaluator)) {
  if (samples_.size() < 16 || !is_power_of_two(samples_.size())) {
    throw std::invalid_argument("GridFunction: N must be a power of two with N >= 16");
  }
}

GridFunction GridFunction::from_evaluator(Evaluator evaluator, std::size_t n) {
  if (!evaluator) throw std::invalid_argument("GridFunction: empty evaluator");
  Evaluator wrapped = [e = std::move(evaluator)](double x) { return e(wrap_angle(x)); };
  if (n < 16 || !is_power_of_two(n)) {
    throw std::invalid_argument("GridFunction: N must be a power of two with N >= 16");
  }
  std::vector<double> samples(n);
  const double h = kTwoPi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) samples[j] = wrapped(-kPi + h * static_cast<double>(j));
  return GridFunction(std::move(samples), std::move(wrapped));
}

GridFunction GridFunction::from_samples(std::vector<double> samples) {
  return GridFunction(std::move(samples), nullptr);
}

double GridFunction::sample(std::ptrdiff_t j) const {
  const auto n = static_cast<std::ptrdiff_t>(samples_.size());
  std::ptrdiff_t r = j % n;
  if (r < 0) r += n;
  return samples_[static_cast<std::size_t>(r)];
}

double GridFunction::interpolate(double x) const {
  const double s = node_coordinate(x);
  const double fl = std::floor(s);
  const double theta = s - fl;
  const auto j = static_cast<std::ptrdiff_t>(fl);
  if (theta == 0.0) return sample(j);
  return (1.0 - theta) * sample(j) + theta * sample(j + 1);
}

double GridFunction::operator()(double x) const {
  return evaluator_ ? evaluator_(x) : interpolate(x);
}

GridFunction GridFunction::combine(double alpha, const GridFunction& f, double beta,
                                   const GridFunction& g) {
  if (f.size() != g.size()) throw std::invalid_argument("GridFunction::combine: grid mismatch");
  std::vector<double> s(f.size());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = alpha * f.samples_[j] + beta * g.samples_[j];
  Evaluator e;
  if (f.has_evaluator() && g.has_evaluator()) {
    e = [alpha, beta, fe = f.evaluator_, ge = g.evaluator_](double x) {
      return alpha * fe(x) + beta * ge(x);
    };
  }
  return GridFunction(std::move(s), std::move(e));
}

GridFunction GridFunction::minus(const TrigPolynomial& t) const {
  std::vector<double> s = t.on_grid(samples_.size());
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = samples_[j] - s[j];
  const double dx = spacing();
  // Keeps samples[j] == evaluator(x_j) exact despite the FFT round-off in s.
  Evaluator e = [base = *this, t, dx, grid = s](double x) {
    const double c = (wrap_angle(x) + kPi) / dx;
    const double r = std::round(c);
    if (std::abs(c - r) <= 1e-9) {
      const auto n = static_cast<std::ptrdiff_t>(grid.size());
      return grid[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(r) % n)];
    }
    return base(x) - t(x);
  };
  return GridFunction(std::move(s), std::move(e));
}

// ---------------------------------------------------------- trig polynomial

TrigPolynomial TrigPolynomial::zero(std::size_t degree) {
  return TrigPolynomial{degree, 0.0, std::vector<double>(degree, 0.0), std::vector<double>(degree, 0.0)};
}

double TrigPolynomial::operator()(double x) const {
  const double c1 = std::cos(x);
  const double s1 = std::sin(x);
  double ck = 1.0;
  double sk = 0.0;
  double sum = 0.5 * a0;
  for (std::size_t k = 0; k < degree; ++k) {
    const double cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
    sum += a[k] * ck + b[k] * sk;
  }
  return sum;
}

std::vector<double> TrigPolynomial::on_grid(std::size_t n) const {
  if (2 * degree >= n) throw AliasingError("TrigPolynomial::on_grid: degree must be < N/2");
  std::vector<std::complex<double>> spec(n / 2 + 1, {0.0, 0.0});
  spec[0] = {0.5 * a0, 0.0};
  for (std::size_t k = 1; k <= degree; ++k) {
    const double sign = (k % 2 == 0) ? 0.5 : -0.5;
    spec[k] = {sign * a[k - 1], -sign * b[k - 1]};
  }
  std::vector<double> out(n);
  RealDft::of_size(n).inverse(spec, out);
  return out;
}

TrigPolynomial TrigPolynomial::padded(std::size_t d) const {
  if (d < degree) throw std::invalid_argument("TrigPolynomial::padded: cannot shrink");
  TrigPolynomial t = *this;
  t.degree = d;
  t.a.resize(d, 0.0);
  t.b.resize(d, 0.0);
  return t;
}

double TrigPolynomial::max_abs_coefficient() const {
  double m = std::abs(a0);
  for (double v : a) m = std::max(m, std::abs(v));
  for (double v : b) m = std::max(m, std::abs(v));
  return m;
}

// ------------------------------------------------------------ coefficients

TrigPolynomial FourierCoefficients::truncated(std::size_t k) const {
  if (k > kmax) throw std::out_of_range("FourierCoefficients::truncated: k > kmax");
  return TrigPolynomial{k, a0, std::vector<double>(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k)),
                        std::vector<double>(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(k))};
}

FourierCoefficients coefficients_from_samples(std::span<const double> samples, std::size_t kmax) {
  const std::size_t n = samples.size();
  if (n < 4 * kmax) {
    throw AliasingError("compute_coefficients: need N >= 4*kmax (N=" + std::to_string(n) +
                        ", kmax=" + std::to_string(kmax) + ")");
  }
  std::vector<std::complex<double>> spec(n / 2 + 1);
  RealDft::of_size(n).forward(samples, spec);
  const double scale = 2.0 / static_cast<double>(n);
  FourierCoefficients c;
  c.kmax = kmax;
  c.a0 = scale * spec[0].real();
  c.a.resize(kmax);
  c.b.resize(kmax);
  for (std::size_t k = 1; k <= kmax; ++k) {
    // cos(k x_j) = (-1)^k cos(2 pi j k / N) on the shifted grid.
    const double sign = (k % 2 == 0) ? scale : -scale;
    c.a[k - 1] = sign * spec[k].real();
    c.b[k - 1] = -sign * spec[k].imag();
  }
  return c;
}

FourierCoefficients compute_coefficients(const GridFunction& f, std::size_t kmax) {
  return coefficients_from_samples(f.samples(), kmax);
}

TrigPolynomial partial_sum(const FourierCoefficients& c, std::size_t k) {
  if (k > c.kmax) throw std::out_of_range("partial_sum: k exceeds kmax");
  return c.truncated(k);
}

// ----------------------------------------------------------------- kernels

double dirichlet_kernel(std::size_t k, double t) {
  const double s = std::sin(0.5 * t);
  if (std::abs(s) < kKernelSingular) {
    double sum = 0.5;
    for (std::size_t j = 1; j <= k; ++j) sum += std::cos(static_cast<double>(j) * t);
    return sum;
  }
  return std::sin((static_cast<double>(2 * k + 1)) * 0.5 * t) / (2.0 * s);
}

double vp_weight(std::size_t n, std::size_t m, std::size_t k) {
  if (m > n) throw std::invalid_argument("vp_weight: m > n");
  if (k + m <= n) return 1.0;
  if (k <= n) return static_cast<double>(n + 1 - k) / static_cast<double>(m + 1);
  return 0.0;
}

double vp_kernel(std::size_t n, std::size_t m, double t) {
  if (m > n) throw std::invalid_argument("vp_kernel: m > n");
  const double s = std::sin(0.5 * t);
  if (std::abs(s) < kKernelSingular) {
    double sum = 0.5;
    for (std::size_t j = 1; j <= n; ++j) sum += vp_weight(n, m, j) * std::cos(static_cast<double>(j) * t);
    return sum;
  }
  // sum_{k=n-m}^{n} sin((2k+1)t/2) = sin((2n-m+1)t/2) sin((m+1)t/2) / sin(t/2)
  const double mp1 = static_cast<double>(m + 1);
  const double num = std::sin(static_cast<double>(2 * n - m + 1) * 0.5 * t) * std::sin(mp1 * 0.5 * t);
  return num / (2.0 * mp1 * s * s);
}

TrigPolynomial vp_mean(const FourierCoefficients& c, std::size_t n, std::size_t m) {
  if (m > n) throw std::invalid_argument("vp_mean: m > n");
  if (n > c.kmax) throw std::out_of_range("vp_mean: n exceeds kmax");
  TrigPolynomial t = c.truncated(n);
  for (std::size_t k = n - m + 1; k <= n; ++k) {
    const double w = vp_weight(n, m, k);
    t.a[k - 1] *= w;
    t.b[k - 1] *= w;
  }
  return t;
}

double vp_mean_by_kernel(const GridFunction& f, std::size_t n, std::size_t m, double x) {
  if (m > n) throw std::invalid_argument("vp_mean_by_kernel: m > n");
  if (f.size() < 4 * n) throw AliasingError("vp_mean_by_kernel: need N >= 4*n");
  const auto samples = f.samples();
  double sum = 0.0;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    sum += samples[j] * vp_kernel(n, m, f.node(static_cast<std::ptrdiff_t>(j)) - x);
  }
  return sum * f.spacing() / kPi;
}

}  // namespace vpa
