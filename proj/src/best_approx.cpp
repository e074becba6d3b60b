#include "vpa/best_approx.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

#include "vpa/dft.hpp"

namespace vpa {

std::string_view to_string(BestApproxMethod m) {
  switch (m) {
    case BestApproxMethod::ExactL2: return "exact-L2";
    case BestApproxMethod::ExchangeMinimax: return "exchange-minimax";
    case BestApproxMethod::IterativeP: return "iterative-p";
    case BestApproxMethod::WindowDirect: return "window-direct";
  }
  return "?";
}

std::string_view to_string(WindowedMethod m) { return m == WindowedMethod::ViaGlobal ? "via-global" : "direct"; }

namespace {

// Coefficient vector layout: [a0/2, a1, b1, a2, b2, ...].
std::vector<double> to_vector(const TrigPolynomial& t) {
  std::vector<double> c(2 * t.degree + 1);
  c[0] = 0.5 * t.a0;
  for (std::size_t k = 1; k <= t.degree; ++k) {
    c[2 * k - 1] = t.a[k - 1];
    c[2 * k] = t.b[k - 1];
  }
  return c;
}

TrigPolynomial to_polynomial(std::span<const double> c) {
  const std::size_t n = (c.size() - 1) / 2;
  TrigPolynomial t = TrigPolynomial::zero(n);
  t.a0 = 2.0 * c[0];
  for (std::size_t k = 1; k <= n; ++k) {
    t.a[k - 1] = c[2 * k - 1];
    t.b[k - 1] = c[2 * k];
  }
  return t;
}

void fourier_row(double u, std::size_t n, std::span<double> row) {
  const double c1 = std::cos(u);
  const double s1 = std::sin(u);
  double ck = 1.0;
  double sk = 0.0;
  row[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
    row[2 * k - 1] = ck;
    row[2 * k] = sk;
  }
}

void grid_residual(std::span<const double> samples, std::span<const double> coeffs, std::span<double> out) {
  const std::vector<double> t = to_polynomial(coeffs).on_grid(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) out[j] = samples[j] - t[j];
}

// Sum_j w_j cos(s x_j) and sum_j w_j sin(s x_j) for s = 0..smax on the grid.
void trig_moments(std::span<const double> w, std::size_t smax, std::vector<double>& c, std::vector<double>& s) {
  const std::size_t n = w.size();
  std::vector<std::complex<double>> spec(n / 2 + 1);
  RealDft::of_size(n).forward(w, spec);
  c.resize(smax + 1);
  s.resize(smax + 1);
  for (std::size_t k = 0; k <= smax; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    c[k] = sign * spec[k].real();
    s[k] = -sign * spec[k].imag();
  }
}

// Weighted least squares on the full grid through the Gram matrix, built
// from trigonometric moments of the weights in O(N log N + n^2).
std::vector<double> grid_weighted_ls(std::span<const double> f, std::span<const double> w, std::size_t n) {
  std::vector<double> cw, sw, cf, sf;
  trig_moments(w, 2 * n, cw, sw);
  std::vector<double> wf(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) wf[j] = w[j] * f[j];
  trig_moments(wf, n, cf, sf);

  auto smom = [&](std::ptrdiff_t d) { return d >= 0 ? sw[static_cast<std::size_t>(d)] : -sw[static_cast<std::size_t>(-d)]; };
  const auto dim = static_cast<Eigen::Index>(2 * n + 1);
  Eigen::MatrixXd g(dim, dim);
  Eigen::VectorXd rhs(dim);
  // Index i -> (k, is_sine); index 0 is cos(0 x).
  auto kind = [](Eigen::Index i) {
    if (i == 0) return std::pair<std::size_t, bool>{0, false};
    return std::pair<std::size_t, bool>{static_cast<std::size_t>((i + 1) / 2), i % 2 == 0};
  };
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto [k, si] = kind(i);
    rhs(i) = si ? sf[k] : cf[k];
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto [l, sj] = kind(j);
      const std::size_t diff = k > l ? k - l : l - k;
      double v;
      if (!si && !sj) {
        v = 0.5 * (cw[diff] + cw[k + l]);
      } else if (si && sj) {
        v = 0.5 * (cw[diff] - cw[k + l]);
      } else {
        // cos(kc x) sin(ks x) = (sin((ks+kc)x) + sin((ks-kc)x)) / 2
        const std::size_t kc = si ? l : k;
        const std::size_t ks = si ? k : l;
        v = 0.5 * (sw[kc + ks] + smom(static_cast<std::ptrdiff_t>(ks) - static_cast<std::ptrdiff_t>(kc)));
      }
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  Eigen::VectorXd sol;
  if (llt.info() == Eigen::Success) sol = llt.solve(rhs);
  if (llt.info() != Eigen::Success || !sol.allFinite()) sol = g.ldlt().solve(rhs);
  if (!sol.allFinite()) sol = g.completeOrthogonalDecomposition().solve(rhs);
  return {sol.data(), sol.data() + sol.size()};
}

// Exact L1 step: interpolate f at the 2n+1 nodes of smallest residual and
// accept if some y with y_j = sign(r_j) off the set and |y_j| <= 1 on it
// satisfies A^T y = 0 (the optimality condition of the linear program).
std::optional<std::vector<double>> certify_l1(const GridFunction& f, std::size_t n, std::span<const double> r) {
  const auto s = f.samples();
  const std::size_t size = s.size();
  const std::size_t dim = 2 * n + 1;
  // Candidates: the node nearer zero at each sign change of r.
  std::vector<std::size_t> cand;
  for (std::size_t j = 0; j < size; ++j) {
    const std::size_t k = (j + 1) % size;
    if ((r[j] > 0.0) != (r[k] > 0.0)) cand.push_back(std::abs(r[j]) <= std::abs(r[k]) ? j : k);
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  if (cand.size() < dim) return std::nullopt;
  std::nth_element(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(dim - 1), cand.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(r[a]) < std::abs(r[b]); });
  std::vector<std::size_t> z(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(dim));
  std::vector<char> in_z(size, 0);
  for (std::size_t j : z) in_z[j] = 1;

  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<double> row(dim);
  auto basis_row = [&](std::size_t j) {
    fourier_row(f.node(static_cast<std::ptrdiff_t>(j)), n, row);
    return Eigen::Map<const Eigen::VectorXd>(row.data(), d);
  };
  // inv = A^{-1}, A having rows basis(z_i). Kept up to date by rank-one
  // row replacements and refactorised every 32 pivots.
  Eigen::MatrixXd inv(d, d);
  auto refactor = [&] {
    Eigen::MatrixXd a(d, d);
    for (Eigen::Index i = 0; i < d; ++i) a.row(i) = basis_row(z[static_cast<std::size_t>(i)]).transpose();
    inv = a.partialPivLu().inverse();
  };
  refactor();
  Eigen::VectorXd fz(d);
  std::vector<double> res(size), dir(size), sgn(size), cm, sm;
  const std::vector<double> zero(size, 0.0);
  std::vector<std::pair<double, double>> breaks;
  Eigen::VectorXd g(d);

  // Simplex pivots: while some |y_i| > 1, release node i from the
  // interpolation set and move along the resulting direction to the
  // minimiser of the piecewise linear objective (a weighted median).
  for (std::size_t pivot = 0; pivot <= 4 * dim + 16; ++pivot) {
    if (pivot > 0 && pivot % 32 == 0) refactor();
    for (Eigen::Index i = 0; i < d; ++i) fz(i) = s[z[static_cast<std::size_t>(i)]];
    const Eigen::VectorXd c = inv * fz;
    if (!c.allFinite()) return std::nullopt;
    std::vector<double> coeffs(c.data(), c.data() + c.size());
    grid_residual(s, coeffs, res);

    for (std::size_t j = 0; j < size; ++j) sgn[j] = in_z[j] ? 0.0 : (res[j] > 0.0 ? 1.0 : (res[j] < 0.0 ? -1.0 : 0.0));
    trig_moments(sgn, n, cm, sm);
    g(0) = cm[0];
    for (std::size_t k = 1; k <= n; ++k) {
      g(static_cast<Eigen::Index>(2 * k - 1)) = cm[k];
      g(static_cast<Eigen::Index>(2 * k)) = sm[k];
    }
    const Eigen::VectorXd y = -(inv.transpose() * g);
    if (!y.allFinite()) return std::nullopt;
    Eigen::Index worst = 0;
    const double ymax = y.cwiseAbs().maxCoeff(&worst);
    if (ymax <= 1.0 + 1e-9) return coeffs;

    // Direction: polynomial equal to 1 at the released node, 0 on the rest.
    const Eigen::VectorXd dc = inv.col(worst);
    const std::vector<double> dv(dc.data(), dc.data() + dc.size());
    grid_residual(zero, dv, dir);  // dir = -(direction on the grid)
    breaks.clear();
    double total = 0.0;
    const std::size_t released = z[static_cast<std::size_t>(worst)];
    for (std::size_t j = 0; j < size; ++j) {
      if (j != released && in_z[j]) continue;
      const double v = -dir[j];
      if (std::abs(v) <= 1e-14) continue;
      breaks.emplace_back(res[j] / v, std::abs(v));
      total += std::abs(v);
    }
    if (breaks.empty()) return std::nullopt;
    std::sort(breaks.begin(), breaks.end());
    double acc = 0.0;
    double tstar = breaks.back().first;
    for (const auto& [t, w] : breaks) {
      acc += w;
      if (acc >= 0.5 * total) {
        tstar = t;
        break;
      }
    }
    // The entering node is the one whose breakpoint is t*.
    std::size_t entering = size;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < size; ++j) {
      if (in_z[j]) continue;
      const double v = -dir[j];
      if (std::abs(v) <= 1e-14) continue;
      const double gap = std::abs(res[j] / v - tstar);
      if (gap < best_gap) {
        best_gap = gap;
        entering = j;
      }
    }
    if (entering == size) return std::nullopt;

    // Sherman-Morrison for A' = A + e_w (a_new - a_old)^T.
    const Eigen::VectorXd incoming = basis_row(entering);
    const Eigen::VectorXd delta = incoming - basis_row(released);
    const Eigen::RowVectorXd vt = delta.transpose() * inv;
    const double denom = 1.0 + vt(worst);
    if (std::abs(denom) <= 1e-12) return std::nullopt;
    inv -= dc * vt / denom;
    in_z[released] = 0;
    in_z[entering] = 1;
    z[static_cast<std::size_t>(worst)] = entering;
  }
  return std::nullopt;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

// -------------------------------------------------------------- best global

BestApproxResult best_global(const GridFunction& f, std::size_t n, LebesgueExponent p) {
  const std::size_t size = f.size();
  if (size < 4 * n) {
    throw AliasingError("best_global: need N >= 4n (N=" + std::to_string(size) + ", n=" + std::to_string(n) + ")");
  }
  const auto s = f.samples();
  BestApproxResult out;
  out.n = n;
  out.p = p;

  std::vector<std::complex<double>> spec(size / 2 + 1);
  RealDft::of_size(size).forward(s, spec);
  const FourierCoefficients l2 = coefficients_from_samples(s, n);

  if (!p.is_infinite() && p.value() == 2.0) {
    // Parseval on the grid: h * sum |f_j - S_n f_j|^2 = (2 pi / N^2) * tail.
    double tail = 0.0;
    for (std::size_t k = n + 1; k < size / 2; ++k) tail += 2.0 * std::norm(spec[k]);
    if (n < size / 2) tail += std::norm(spec[size / 2]);
    out.polynomial = l2.truncated(n);
    out.error = std::sqrt(kTwoPi * tail) / static_cast<double>(size);
    out.method = BestApproxMethod::ExactL2;
    return out;
  }

  std::vector<double> start = to_vector(l2.truncated(n));
  std::vector<double> r(size);
  grid_residual(s, start, r);
  double start_err = max_abs(r);

  if (p.is_infinite()) {
    // Centre the residual; for lacunary tails this start is already optimal.
    const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
    start[0] += 0.5 * (*lo + *hi);
    grid_residual(s, start, r);
    start_err = max_abs(r);
    out.method = BestApproxMethod::ExchangeMinimax;
    if (start_err <= 1e-14 * (1.0 + max_abs(s))) {
      out.polynomial = to_polynomial(start);
      out.error = start_err;
      return out;
    }
    ExchangeProblem pb;
    pb.points = size;
    pb.dim = 2 * n + 1;
    pb.cyclic = true;
    pb.row = [&f, n](std::size_t i, std::span<double> row) {
      fourier_row(f.node(static_cast<std::ptrdiff_t>(i)), n, row);
    };
    pb.value = [s](std::size_t i) { return s[i]; };
    pb.residual = [s](std::span<const double> c, std::span<double> res) { grid_residual(s, c, res); };
    const ExchangeResult ex = solve_minimax(pb, start);
    if (ex.error <= start_err) {
      out.polynomial = to_polynomial(ex.coeffs);
      out.error = ex.error;
    } else {
      out.polynomial = to_polynomial(start);
      out.error = start_err;
    }
    out.iterations = ex.iterations;
    return out;
  }

  const double q = p.value();
  out.method = BestApproxMethod::IterativeP;
  IrlsProblem pb;
  pb.points = size;
  pb.dim = 2 * n + 1;
  pb.base_weights.assign(size, f.spacing());
  pb.solve_weighted = [s, n](std::span<const double> w) { return grid_weighted_ls(s, w, n); };
  pb.residual = [s](std::span<const double> c, std::span<double> res) { grid_residual(s, c, res); };
  if (q == 1.0) {
    pb.certify = [&f, n](std::span<const double>, std::span<const double> r) { return certify_l1(f, n, r); };
  }
  const IrlsResult ir = solve_irls(pb, q, 1e-10, q < 1.5 ? 2000 : 500);
  out.polynomial = to_polynomial(ir.coeffs);
  out.error = std::pow(ir.objective, 1.0 / q);
  out.iterations = ir.iterations;
  return out;
}

double windowed_error(const GridFunction& f, const TrigPolynomial& t, const WindowSpec& w) {
  w.validate();
  if (w.delta == 0.0) return std::abs(f(w.x) - t(w.x));
  return windowed_norm(f.minus(t), w);
}

// ------------------------------------------------------------------- cache

std::shared_ptr<const BestApproxResult> BestApproxCache::get(std::size_t n, LebesgueExponent p) const {
  const auto key = std::make_pair(n, p);
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
  }
  auto fresh = std::make_shared<const BestApproxResult>(best_global(*f_, n, p));
  std::unique_lock lock(mutex_);
  return entries_.emplace(key, std::move(fresh)).first->second;
}

// ------------------------------------------------------------ direct window

namespace {

// Basis of H_n restricted to |u| <= delta, u = t - x. Wide windows use the
// Fourier basis; narrow ones use cos^{2n}(u/2) T_j(tan(u/2) / tan(delta/2)),
// j = 0..2n, which spans the same space and stays well conditioned.
struct WindowBasis {
  std::size_t n;
  double delta;
  bool fourier;
  double scale;  // 1 / tan(delta/2)

  WindowBasis(std::size_t n_, double delta_)
      : n(n_), delta(delta_), fourier(delta_ >= 0.5 * kPi), scale(fourier ? 0.0 : 1.0 / std::tan(0.5 * delta_)) {}

  std::size_t dim() const { return 2 * n + 1; }

  void row(double u, std::span<double> out) const {
    if (fourier) {
      fourier_row(u, n, out);
      return;
    }
    const double c = std::cos(0.5 * u);
    const double tau = std::tan(0.5 * u) * scale;
    const double env = std::pow(c, static_cast<double>(2 * n));
    double t0 = 1.0;
    double t1 = tau;
    out[0] = env;
    if (dim() > 1) out[1] = env * tau;
    for (std::size_t j = 2; j < dim(); ++j) {
      const double t2 = 2.0 * tau * t1 - t0;
      out[j] = env * t2;
      t0 = t1;
      t1 = t2;
    }
  }
};

struct WindowData {
  std::vector<double> u;       // offsets from x
  std::vector<double> values;  // f at x + u
  std::vector<double> weights;
  Eigen::MatrixXd rows;
};

WindowData window_data(const GridFunction& f, double x, double h, const WindowBasis& basis) {
  WindowSamples ws = sample_window(f, x, h);
  WindowData d;
  d.u.reserve(ws.positions.size());
  for (double pos : ws.positions) d.u.push_back(pos - x);
  d.values = std::move(ws.values);
  d.weights = std::move(ws.weights);
  d.rows.resize(static_cast<Eigen::Index>(d.u.size()), static_cast<Eigen::Index>(basis.dim()));
  std::vector<double> row(basis.dim());
  for (std::size_t i = 0; i < d.u.size(); ++i) {
    basis.row(d.u[i], row);
    for (std::size_t k = 0; k < row.size(); ++k) {
      d.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k];
    }
  }
  return d;
}

std::vector<double> weighted_fit(const Eigen::MatrixXd& a, std::span<const double> y, std::span<const double> w) {
  const Eigen::Index m = a.rows();
  Eigen::MatrixXd aw(m, a.cols());
  Eigen::VectorXd yw(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double s = std::sqrt(w[static_cast<std::size_t>(i)]);
    aw.row(i) = s * a.row(i);
    yw(i) = s * y[static_cast<std::size_t>(i)];
  }
  // Complete orthogonal decomposition picks the minimum-norm minimiser when
  // the window cannot separate all basis functions.
  Eigen::VectorXd sol = aw.completeOrthogonalDecomposition().solve(yw);
  return {sol.data(), sol.data() + sol.size()};
}

void dense_residual(const Eigen::MatrixXd& a, std::span<const double> y, std::span<const double> c,
                    std::span<double> out) {
  const Eigen::Map<const Eigen::VectorXd> cv(c.data(), static_cast<Eigen::Index>(c.size()));
  const Eigen::VectorXd t = a * cv;
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] - t(static_cast<Eigen::Index>(i));
}

double window_minimax(const GridFunction& f, std::size_t n, const WindowSpec& w, WindowFit& fit) {
  const WindowBasis basis(n, w.delta);
  WindowData d = window_data(f, w.x, w.delta, basis);
  const double tiny = 1e-9 * f.spacing();
  const bool full = w.delta >= kPi * (1.0 - 1e-15);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < d.u.size(); ++i) {
    if (std::abs(d.u[i]) <= tiny) continue;  // the sup excludes t = 0
    if (full && i + 1 == d.u.size()) continue;  // x + pi and x - pi coincide
    keep.push_back(i);
  }
  if (keep.size() < 2 * n + 2) {
    throw std::invalid_argument("best_windowed_direct: window holds " + std::to_string(keep.size()) +
                                " samples, need at least 2n+2 = " + std::to_string(2 * n + 2));
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(keep.size()), d.rows.cols());
  std::vector<double> y(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    a.row(static_cast<Eigen::Index>(i)) = d.rows.row(static_cast<Eigen::Index>(keep[i]));
    y[i] = d.values[keep[i]];
  }
  const std::vector<double> ones(keep.size(), 1.0);
  const std::vector<double> start = weighted_fit(a, y, ones);
  std::vector<double> r(keep.size());
  dense_residual(a, y, start, r);
  const double start_err = max_abs(r);
  if (start_err <= 1e-14 * (1.0 + max_abs(y))) {
    fit = {start_err, 0.0, 0};
    return start_err;
  }

  ExchangeProblem pb;
  pb.points = keep.size();
  pb.dim = basis.dim();
  pb.cyclic = full;
  pb.row = [&a](std::size_t i, std::span<double> row) {
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  };
  pb.value = [&y](std::size_t i) { return y[i]; };
  pb.residual = [&a, &y](std::span<const double> c, std::span<double> res) { dense_residual(a, y, c, res); };
  const ExchangeResult ex = solve_minimax(pb, start);
  fit = {std::min(ex.error, start_err), ex.level, ex.iterations};
  return fit.error;
}

double lp_value(std::span<const double> r, std::span<const double> w, double p, double length) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += w[i] * std::pow(std::abs(r[i]), p);
  return std::pow(std::max(s, 0.0) / length, 1.0 / p);
}

IrlsResult window_irls(const Eigen::MatrixXd& a, std::span<const double> y, std::span<const double> weights,
                       double p) {
  IrlsProblem pb;
  pb.points = y.size();
  pb.dim = static_cast<std::size_t>(a.cols());
  pb.base_weights.assign(weights.begin(), weights.end());
  pb.solve_weighted = [&a, y](std::span<const double> w) { return weighted_fit(a, y, w); };
  pb.residual = [&a, y](std::span<const double> c, std::span<double> res) { dense_residual(a, y, c, res); };
  return solve_irls(pb, p, 1e-10, p < 1.5 ? 2000 : 500);
}

double window_fixed_lp(const GridFunction& f, std::size_t n, const WindowSpec& w, WindowFit& fit) {
  const double p = w.p.value();
  const WindowBasis basis(n, w.delta);
  const WindowData d = window_data(f, w.x, w.delta, basis);
  const IrlsResult ir = window_irls(d.rows, d.values, d.weights, p);
  std::vector<double> r(d.u.size());
  dense_residual(d.rows, d.values, ir.coeffs, r);
  const double v = lp_value(r, d.weights, p, 2.0 * w.delta);
  // Weighted least squares is exact for p = 2; IRLS carries no separate bound.
  fit = {v, v, ir.iterations};
  return v;
}

// min over T of max over h in H(delta) of ||f - T||°_{x,h}, finite p. Radii
// are thinned to at most 64; the value reported is evaluated over all of
// H(delta). Each round solves a weighted problem whose optimum is a lower
// bound (weak duality), then reweights the radii toward the largest norms.
double window_sup_lp(const GridFunction& f, std::size_t n, const WindowSpec& w, WindowFit& fit) {
  const double p = w.p.value();
  const WindowBasis basis(n, w.delta);
  const WindowData d = window_data(f, w.x, w.delta, basis);

  std::vector<double> radii;
  {
    const double dx = f.spacing();
    const double s = f.node_coordinate(w.x);
    std::vector<double> dist;
    const auto lo = static_cast<std::ptrdiff_t>(std::floor(s - w.delta / dx)) - 1;
    const auto hi = static_cast<std::ptrdiff_t>(std::ceil(s + w.delta / dx)) + 1;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) {
      const double r = std::abs(s - static_cast<double>(j)) * dx;
      if (r > 1e-9 * dx && r < w.delta) dist.push_back(r);
    }
    std::sort(dist.begin(), dist.end());
    dist.erase(std::unique(dist.begin(), dist.end(), [dx](double a, double b) { return b - a <= 1e-9 * dx; }),
               dist.end());
    const std::size_t cap = 63;
    if (dist.size() <= cap) {
      radii = dist;
    } else {
      for (std::size_t i = 0; i < cap; ++i) radii.push_back(dist[i * (dist.size() - 1) / (cap - 1)]);
      radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    }
    radii.push_back(w.delta);
  }

  // Per-radius trapezoid weights on the shared sample set. Sub-windows whose
  // endpoints fall between samples are measured on their own sample sets.
  const std::size_t L = radii.size();
  std::vector<WindowData> subs;
  subs.reserve(L);
  for (double h : radii) subs.push_back(window_data(f, w.x, h, basis));

  std::vector<double> lambda(L, 1.0 / static_cast<double>(L));
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::size_t iter = 0;
  const std::size_t max_iter = 400;

  // Primal value over all of H(delta), via the residual profile.
  auto primal = [&](std::span<const double> c) {
    std::vector<double> row(basis.dim());
    auto eval = [&](double t) {
      const double u = wrap_angle(t - w.x);
      if (std::abs(u) > w.delta * (1.0 + 1e-12) + 1e-12) return 0.0;
      basis.row(u, row);
      double s = 0.0;
      for (std::size_t k = 0; k < row.size(); ++k) s += c[k] * row[k];
      return f(t) - s;
    };
    const GridFunction res = GridFunction::from_evaluator(eval, f.size());
    return WindowProfile(res, w.x, w.p).sup(w.delta);
  };

  for (; iter < max_iter; ++iter) {
    // Stack all sub-windows with weights lambda_l * w_i / (2 h_l).
    Eigen::Index rows = 0;
    for (const auto& s : subs) rows += s.rows.rows();
    Eigen::MatrixXd a(rows, static_cast<Eigen::Index>(basis.dim()));
    std::vector<double> y, wt;
    y.reserve(static_cast<std::size_t>(rows));
    wt.reserve(static_cast<std::size_t>(rows));
    Eigen::Index at = 0;
    for (std::size_t l = 0; l < L; ++l) {
      a.middleRows(at, subs[l].rows.rows()) = subs[l].rows;
      at += subs[l].rows.rows();
      for (std::size_t i = 0; i < subs[l].values.size(); ++i) {
        y.push_back(subs[l].values[i]);
        wt.push_back(lambda[l] * subs[l].weights[i] / (2.0 * radii[l]));
      }
    }
    const IrlsResult ir = window_irls(a, y, wt, p);
    lower = std::max(lower, std::pow(std::max(ir.objective, 0.0), 1.0 / p));

    std::vector<double> g(L);
    double gmax = 0.0;
    for (std::size_t l = 0; l < L; ++l) {
      std::vector<double> r(subs[l].values.size());
      dense_residual(subs[l].rows, subs[l].values, ir.coeffs, r);
      g[l] = lp_value(r, subs[l].weights, p, 2.0 * radii[l]);
      gmax = std::max(gmax, g[l]);
    }
    if (gmax <= 1e-14) {
      upper = primal(ir.coeffs);
      lower = std::min(lower, upper);
      break;
    }
    if (gmax - lower <= 1e-3 * gmax || iter + 1 == max_iter || iter % 25 == 0) {
      upper = std::min(upper, primal(ir.coeffs));
      if (upper - lower <= 1e-3 * upper) break;
    }
    double total = 0.0;
    for (std::size_t l = 0; l < L; ++l) {
      lambda[l] *= std::pow(g[l] / gmax, p);
      total += lambda[l];
    }
    for (double& v : lambda) v /= total;
  }
  if (upper - lower > 1e-2 * upper) {
    throw ConvergenceError("best_windowed_direct: sup-variant gap " + std::to_string(upper - lower) + " at value " +
                           std::to_string(upper));
  }
  fit = {upper, lower, iter};
  return upper;
}

}  // namespace

WindowFit best_windowed_direct(const GridFunction& f, std::size_t n, const WindowSpec& w) {
  w.validate();
  WindowFit fit;
  if (w.delta == 0.0) return fit;  // constants interpolate f(x)
  if (w.p.is_infinite()) {
    window_minimax(f, n, w, fit);
  } else if (w.variant == WindowVariant::FixedDelta) {
    window_fixed_lp(f, n, w, fit);
  } else {
    window_sup_lp(f, n, w, fit);
  }
  return fit;
}

double E_windowed(const BestApproxCache& cache, std::size_t n, const WindowSpec& w, WindowedMethod method) {
  w.validate();
  if (method == WindowedMethod::Direct) return best_windowed_direct(cache.function(), n, w).error;
  return windowed_error(cache.function(), cache.get(n, w.p)->polynomial, w);
}

FTable F_average(const BestApproxCache& cache, std::size_t n, std::size_t m, double x, LebesgueExponent p,
                 WindowVariant variant) {
  FTable t{n, m, x, p, variant, {}, 0.0};
  const GridFunction res = cache.function().minus(cache.get(n, p)->polynomial);
  const WindowProfile prof(res, x, p);
  t.entries.reserve(m + 1);
  double sum = 0.0;
  for (std::size_t k = 0; k <= m; ++k) {
    t.entries.push_back(prof.norm(FTable::delta(k), variant));
    sum += t.entries.back();
  }
  t.average = sum / static_cast<double>(m + 1);
  return t;
}

}  // namespace vpa
