#include "vpa/local_norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vpa {

namespace {

// Node coordinates closer than this (in units of the spacing) to an integer
// are treated as lying on the node.
constexpr double kSnap = 1e-9;

bool snaps(double s) { return std::abs(s - std::round(s)) <= kSnap; }

void check_radius(double delta) {
  if (!(delta >= 0.0) || delta > kPi * (1.0 + 1e-15)) {
    throw std::invalid_argument("window radius must lie in [0, pi]");
  }
}

}  // namespace

std::string_view to_string(WindowVariant v) {
  return v == WindowVariant::SupOverH ? "sup" : "fixed";
}

void WindowSpec::validate() const { check_radius(delta); }

// ------------------------------------------------------------ window samples

WindowSamples sample_window(const GridFunction& g, double x, double h) {
  check_radius(h);
  WindowSamples w;
  if (h == 0.0) {
    w.positions = {x};
    w.values = {g(x)};
    w.weights = {0.0};
    return w;
  }
  const double sa = g.node_coordinate(x - h);
  const double sb = g.node_coordinate(x + h);
  const auto jl = static_cast<std::ptrdiff_t>(std::ceil(sa - kSnap));
  const auto jr = static_cast<std::ptrdiff_t>(std::floor(sb + kSnap));
  if (!snaps(sa)) {
    w.positions.push_back(x - h);
    w.values.push_back(g(x - h));
  }
  for (std::ptrdiff_t j = jl; j <= jr; ++j) {
    w.positions.push_back(g.node(j));
    w.values.push_back(g.sample(j));
  }
  if (!snaps(sb)) {
    w.positions.push_back(x + h);
    w.values.push_back(g(x + h));
  }
  const std::size_t n = w.positions.size();
  w.weights.assign(n, 0.0);
  if (n == 1) {
    w.weights[0] = 2.0 * h;
    return w;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double len = std::max(w.positions[i + 1] - w.positions[i], 0.0);
    w.weights[i] += 0.5 * len;
    w.weights[i + 1] += 0.5 * len;
  }
  return w;
}

// ------------------------------------------------------------ window profile

WindowProfile::WindowProfile(const GridFunction& g, double x, LebesgueExponent p, double shift)
    : g_(&g), x_(x), p_(p), shift_(shift), s_(g.node_coordinate(x)) {
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  const auto half = n / 2;
  const auto fl = static_cast<std::ptrdiff_t>(std::floor(s_));
  base_ = fl - half - 2;
  const std::size_t len = static_cast<std::size_t>(n + 6);
  const double dx = g.spacing();

  phi_.resize(len);
  for (std::size_t t = 0; t < len; ++t) {
    phi_[t] = power(g.sample(base_ + static_cast<std::ptrdiff_t>(t)) - shift_);
  }
  if (!p_.is_infinite()) {
    cumulative_.resize(len);
    cumulative_[0] = 0.0;
    for (std::size_t t = 1; t < len; ++t) {
      cumulative_[t] = cumulative_[t - 1] + 0.5 * dx * (phi_[t - 1] + phi_[t]);
    }
  }

  std::vector<std::pair<double, double>> by_distance;  // (distance, phi)
  by_distance.reserve(static_cast<std::size_t>(n + 2));
  if (snaps(s_)) {
    // Centred on a node: distances come out sorted, two per step.
    const auto c = static_cast<std::ptrdiff_t>(std::round(s_));
    for (std::ptrdiff_t i = 1; i <= half; ++i) {
      const double d = std::min(static_cast<double>(i) * dx, kPi);
      by_distance.emplace_back(d, phi_[static_cast<std::size_t>(c - i - base_)]);
      by_distance.emplace_back(d, phi_[static_cast<std::size_t>(c + i - base_)]);
    }
  } else {
    for (std::ptrdiff_t j = fl - half - 1; j <= fl + half + 1; ++j) {
      const double d = std::abs(s_ - static_cast<double>(j)) * dx;
      if (d > kPi * (1.0 + 1e-12)) continue;
      by_distance.emplace_back(std::min(d, kPi), phi_[static_cast<std::size_t>(j - base_)]);
    }
    std::sort(by_distance.begin(), by_distance.end());
  }
  distances_.reserve(by_distance.size());
  running_max_.reserve(by_distance.size());
  // p = inf: max of the node values within each distance. Finite p: max of
  // the window average over all h up to each distance.
  double best = 0.0;
  double from = 0.0;
  for (const auto& [d, ph] : by_distance) {
    distances_.push_back(d);
    best = std::max(best, p_.is_infinite() ? ph : piece_max(from, d));
    from = d;
    running_max_.push_back(best);
  }
}

double WindowProfile::power(double v) const {
  const double a = std::abs(v);
  if (p_.is_infinite()) return a;
  const double p = p_.value();
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

double WindowProfile::value_at(double u) const {
  const double s = g_->node_coordinate(u);
  if (snaps(s)) return g_->sample(static_cast<std::ptrdiff_t>(std::round(s))) - shift_;
  return (*g_)(u) - shift_;
}

double WindowProfile::at_centre() const { return std::abs(value_at(x_)); }

double WindowProfile::phi_at(double s) const {
  if (snaps(s)) return phi_[static_cast<std::size_t>(std::llround(s) - base_)];
  const double fl = std::floor(s);
  const auto i = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(fl) - base_);
  const double t = s - fl;
  return (1.0 - t) * phi_[i] + t * phi_[i + 1];
}

double WindowProfile::average(double h) const {
  if (h <= 0.0) return phi_at(s_);
  return std::max(integral(h), 0.0) / (2.0 * h);
}

double WindowProfile::root(double avg) const {
  const double p = p_.value();
  if (p == 1.0) return avg;
  if (p == 2.0) return std::sqrt(avg);
  return std::pow(avg, 1.0 / p);
}

// Between consecutive node distances the window integral I(h) is quadratic,
// so the average (a h + b + c / h) / 2 has at most one interior critical
// point, at h = sqrt(c / a).
double WindowProfile::piece_max(double from, double to) const {
  double best = std::max(average(from), average(to));
  const double len = to - from;
  if (len <= 1e-12 * (1.0 + to)) return best;
  const double mid = from + 0.5 * len;
  const double i0 = from > 0.0 ? integral(from) : 0.0;
  const double i1 = integral(mid);
  const double i2 = integral(to);
  // Newton form on the equally spaced nodes from, mid, to.
  const double d1 = (i1 - i0) / (0.5 * len);
  const double d2 = ((i2 - i1) / (0.5 * len) - d1) / len;
  const double a = d2;
  const double c = i0 - from * d1 + d2 * from * mid;
  if (a != 0.0 && c / a > 0.0) {
    const double h = std::sqrt(c / a);
    if (h > from && h < to) best = std::max(best, average(h));
  }
  return best;
}

std::size_t WindowProfile::count_within(double h) const {
  const double limit = h + kSnap * g_->spacing();
  return static_cast<std::size_t>(std::upper_bound(distances_.begin(), distances_.end(), limit) -
                                  distances_.begin());
}

double WindowProfile::integral(double h) const {
  const double dx = g_->spacing();
  const double sa = s_ - h / dx;
  const double sb = s_ + h / dx;
  const bool snap_a = snaps(sa);
  const bool snap_b = snaps(sb);
  const auto jl = static_cast<std::ptrdiff_t>(std::ceil(sa - kSnap));
  const auto jr = static_cast<std::ptrdiff_t>(std::floor(sb + kSnap));
  const double phi_a = phi_at(sa);
  const double phi_b = phi_at(sb);
  if (jl > jr) return 2.0 * h * 0.5 * (phi_a + phi_b);
  const auto il = static_cast<std::size_t>(jl - base_);
  const auto ir = static_cast<std::size_t>(jr - base_);
  double total = cumulative_[ir] - cumulative_[il];
  if (!snap_a) total += 0.5 * (static_cast<double>(jl) - sa) * dx * (phi_a + phi_[il]);
  if (!snap_b) total += 0.5 * (sb - static_cast<double>(jr)) * dx * (phi_[ir] + phi_b);
  return total;
}

double WindowProfile::fixed(double h) const {
  check_radius(h);
  if (h == 0.0) return at_centre();
  const double dx = g_->spacing();
  if (p_.is_infinite()) {
    double m = std::max(phi_at(s_ - h / dx), phi_at(s_ + h / dx));
    const std::size_t c = count_within(h);
    if (c > 0) m = std::max(m, running_max_[c - 1]);
    return m;
  }
  return root(average(h));
}

double WindowProfile::sup(double delta) const {
  check_radius(delta);
  if (delta == 0.0) return at_centre();
  // Sup over all h in (0, delta], which includes the limit h -> 0; the
  // centre value keeps it continuous with the delta = 0 convention.
  if (p_.is_infinite()) return std::max({fixed(delta), phi_at(s_), at_centre()});
  const std::size_t c = count_within(delta);
  const double from = c > 0 ? std::min(distances_[c - 1], delta) : 0.0;
  const double tail = piece_max(from, delta);
  return std::max(root(c > 0 ? std::max(tail, running_max_[c - 1]) : tail), at_centre());
}

// ------------------------------------------------------------------ norms

double grid_norm(std::span<const double> samples, const LebesgueExponent& p) {
  if (samples.empty()) return 0.0;
  if (p.is_infinite()) {
    double m = 0.0;
    for (double v : samples) m = std::max(m, std::abs(v));
    return m;
  }
  const double q = p.value();
  const double h = kTwoPi / static_cast<double>(samples.size());
  double s = 0.0;
  if (q == 1.0) {
    for (double v : samples) s += std::abs(v);
    return h * s;
  }
  if (q == 2.0) {
    for (double v : samples) s += v * v;
    return std::sqrt(h * s);
  }
  for (double v : samples) s += std::pow(std::abs(v), q);
  return std::pow(h * s, 1.0 / q);
}

double delta_op(const GridFunction& f, double x, double t) { return f(x + t) - f(x); }

double windowed_norm(const GridFunction& f, const WindowSpec& w) {
  w.validate();
  if (w.delta == 0.0) return std::abs(f(w.x));
  return WindowProfile(f, w.x, w.p).norm(w.delta, w.variant);
}

double pointwise_modulus(const GridFunction& f, double x, double delta, LebesgueExponent p,
                         WindowVariant variant) {
  check_radius(delta);
  if (delta == 0.0) return 0.0;
  return WindowProfile(f, x, p, f(x)).norm(delta, variant);
}

double ModulusTable::mean() const {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

ModulusTable modulus_table(const GridFunction& f, double x, std::size_t n, LebesgueExponent p,
                           WindowVariant variant) {
  ModulusTable t{n, x, p, variant, {}};
  const WindowProfile prof(f, x, p, f(x));
  t.values.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t.values.push_back(prof.norm(t.delta(k), variant));
  return t;
}

double averaged_modulus(const GridFunction& f, double x, std::size_t n, LebesgueExponent p,
                        WindowVariant variant) {
  return modulus_table(f, x, n, p, variant).mean();
}

// ----------------------------------------------------------- global modulus

namespace {

double shift_norm_nodes(const GridFunction& f, std::ptrdiff_t k, const LebesgueExponent& p,
                        std::vector<double>& scratch) {
  const auto s = f.samples();
  const auto n = static_cast<std::ptrdiff_t>(s.size());
  scratch.resize(s.size());
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    scratch[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>((j + k) % n)] - s[static_cast<std::size_t>(j)];
  }
  return grid_norm(scratch, p);
}

double shift_norm(const GridFunction& f, double h, const LebesgueExponent& p,
                  std::vector<double>& scratch) {
  const double sh = h / f.spacing();
  if (snaps(sh)) return shift_norm_nodes(f, static_cast<std::ptrdiff_t>(std::round(sh)), p, scratch);
  const auto s = f.samples();
  scratch.resize(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    scratch[j] = f(f.node(static_cast<std::ptrdiff_t>(j)) + h) - s[j];
  }
  return grid_norm(scratch, p);
}

}  // namespace

double global_modulus(const GridFunction& f, double delta, LebesgueExponent p) {
  if (!(delta > 0.0) || delta > kPi * (1.0 + 1e-15)) {
    throw std::invalid_argument("global_modulus: delta must lie in (0, pi]");
  }
  std::vector<double> scratch;
  const auto kmax = static_cast<std::ptrdiff_t>(std::floor(delta / f.spacing() + kSnap));
  double best = shift_norm(f, delta, p, scratch);
  for (std::ptrdiff_t k = 1; k <= kmax; ++k) best = std::max(best, shift_norm_nodes(f, k, p, scratch));
  return best;
}

GlobalModulusProfile::GlobalModulusProfile(const GridFunction& f, LebesgueExponent p) : f_(&f), p_(p) {
  const std::size_t half = f.size() / 2;
  running_max_.assign(half + 1, 0.0);
  std::vector<double> scratch;
  for (std::size_t k = 1; k <= half; ++k) {
    running_max_[k] =
        std::max(running_max_[k - 1], shift_norm_nodes(f, static_cast<std::ptrdiff_t>(k), p_, scratch));
  }
}

double GlobalModulusProfile::shifted_norm(double h) const {
  std::vector<double> scratch;
  return shift_norm(*f_, h, p_, scratch);
}

double GlobalModulusProfile::operator()(double delta) const {
  if (!(delta > 0.0) || delta > kPi * (1.0 + 1e-15)) {
    throw std::invalid_argument("global_modulus: delta must lie in (0, pi]");
  }
  const auto k = static_cast<std::size_t>(std::floor(delta / f_->spacing() + kSnap));
  return std::max(running_max_[std::min(k, running_max_.size() - 1)], shifted_norm(delta));
}

double averaged_global_modulus(const GridFunction& f, std::size_t n, LebesgueExponent p) {
  const GlobalModulusProfile omega(f, p);
  double s = 0.0;
  for (std::size_t k = 0; k <= n; ++k) s += omega(kPi / static_cast<double>(k + 1));
  return s / static_cast<double>(n + 1);
}

}  // namespace vpa
