#include "vpa/minimax.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace vpa {

namespace {

int sign_of(double v) { return v >= 0.0 ? 1 : -1; }

// Extrema of the sign runs of r, trimmed to exactly `count` alternating
// points that keep the global maximum. nullopt if r alternates fewer times.
std::optional<std::vector<std::size_t>> alternating_extrema(std::span<const double> r, std::size_t count,
                                                            bool cyclic) {
  const std::size_t m = r.size();
  if (m == 0) return std::nullopt;
  std::size_t start = 0;
  if (cyclic) {
    bool found = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (sign_of(r[i]) != sign_of(r[(i + m - 1) % m])) {
        start = i;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  std::vector<std::size_t> ext;
  std::size_t best = start;
  int run_sign = sign_of(r[start]);
  for (std::size_t step = 1; step <= m; ++step) {
    if (step == m) {
      ext.push_back(best);
      break;
    }
    const std::size_t i = cyclic ? (start + step) % m : step;
    if (sign_of(r[i]) != run_sign) {
      ext.push_back(best);
      best = i;
      run_sign = sign_of(r[i]);
    } else if (std::abs(r[i]) > std::abs(r[best])) {
      best = i;
    }
  }
  if (cyclic) std::sort(ext.begin(), ext.end());
  if (ext.size() < count) return std::nullopt;

  auto mag = [&](std::size_t k) { return std::abs(r[ext[k]]); };
  while (ext.size() > count) {
    const std::size_t n = ext.size();
    std::size_t lo = 0;
    for (std::size_t k = 1; k < n; ++k) {
      if (mag(k) < mag(lo)) lo = k;
    }
    if (!cyclic && (lo == 0 || lo == n - 1)) {
      ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(lo));
      continue;
    }
    if (!cyclic && n - count == 1) {
      // One too many: dropping an end point keeps the alternation.
      ext.erase(mag(0) < mag(n - 1) ? ext.begin() : ext.end() - 1);
      continue;
    }
    if (cyclic && n - count == 1) {
      // Cyclic run counts are even, so this only happens with odd `count`.
      ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(lo));
      continue;
    }
    const std::size_t prev = (lo + n - 1) % n;
    const std::size_t next = (lo + 1) % n;
    const std::size_t other = mag(prev) < mag(next) ? prev : next;
    const std::size_t first = std::max(lo, other);
    const std::size_t second = std::min(lo, other);
    ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(first));
    ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(second));
  }
  return ext;
}

// Replaces one reference point by `incoming` so that signs keep alternating.
std::vector<std::size_t> single_exchange(std::vector<std::size_t> ref, std::span<const double> r,
                                         std::size_t incoming, bool cyclic) {
  const int s = sign_of(r[incoming]);
  const std::size_t n = ref.size();
  const auto pos = static_cast<std::size_t>(std::upper_bound(ref.begin(), ref.end(), incoming) - ref.begin());
  if (cyclic || (pos > 0 && pos < n)) {
    const std::size_t left = (pos + n - 1) % n;
    const std::size_t right = pos % n;
    ref[sign_of(r[ref[left]]) == s ? left : right] = incoming;
  } else if (pos == 0) {
    if (sign_of(r[ref[0]]) == s) {
      ref[0] = incoming;
    } else {
      ref.pop_back();
      ref.insert(ref.begin(), incoming);
    }
  } else {
    if (sign_of(r[ref[n - 1]]) == s) {
      ref[n - 1] = incoming;
    } else {
      ref.erase(ref.begin());
      ref.push_back(incoming);
    }
  }
  std::sort(ref.begin(), ref.end());
  return ref;
}

}  // namespace

ExchangeResult solve_minimax(const ExchangeProblem& pb, std::span<const double> initial, double rel_tol,
                             std::size_t max_iter) {
  const std::size_t dim = pb.dim;
  const std::size_t count = dim + 1;
  if (pb.points < count) {
    throw std::invalid_argument("solve_minimax: need at least dim+1 points (" + std::to_string(pb.points) +
                                " < " + std::to_string(count) + ")");
  }
  std::vector<double> r(pb.points);
  pb.residual(initial, r);

  ExchangeResult out;
  std::vector<std::size_t> ref;
  if (auto e = alternating_extrema(r, count, pb.cyclic)) {
    // A start whose residual already alternates at full height is optimal:
    // the smallest alternating extremum bounds the optimum from below.
    double err = 0.0;
    for (double v : r) err = std::max(err, std::abs(v));
    double low = err;
    for (std::size_t i : *e) low = std::min(low, std::abs(r[i]));
    if (err - low <= rel_tol * (1.0 + err)) {
      out.coeffs.assign(initial.begin(), initial.end());
      out.level = low;
      out.error = err;
      return out;
    }
    ref = std::move(*e);
  } else {
    ref.resize(count);
    for (std::size_t i = 0; i < count; ++i) ref[i] = i * pb.points / count;
  }

  Eigen::MatrixXd sys(count, count);
  Eigen::VectorXd rhs(count);
  std::vector<double> row(dim);
  out.coeffs.assign(dim, 0.0);

  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    for (std::size_t i = 0; i < count; ++i) {
      pb.row(ref[i], row);
      for (std::size_t k = 0; k < dim; ++k) sys(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k];
      sys(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(dim)) = (i % 2 == 0) ? 1.0 : -1.0;
      rhs(static_cast<Eigen::Index>(i)) = pb.value(ref[i]);
    }
    Eigen::VectorXd sol = sys.partialPivLu().solve(rhs);
    if (!sol.allFinite() || (sys * sol - rhs).norm() > 1e-8 * (1.0 + rhs.norm())) {
      // Degenerate reference: take the minimum-norm solution.
      sol = sys.completeOrthogonalDecomposition().solve(rhs);
    }
    for (std::size_t k = 0; k < dim; ++k) out.coeffs[k] = sol(static_cast<Eigen::Index>(k));
    const double level = std::abs(sol(static_cast<Eigen::Index>(dim)));

    pb.residual(out.coeffs, r);
    std::size_t imax = 0;
    for (std::size_t i = 1; i < r.size(); ++i) {
      if (std::abs(r[i]) > std::abs(r[imax])) imax = i;
    }
    const double err = std::abs(r[imax]);
    out.level = level;
    out.error = err;
    out.iterations = iter;
    if (err - level <= rel_tol * (1.0 + err)) return out;

    std::vector<std::size_t> next;
    if (auto e = alternating_extrema(r, count, pb.cyclic);
        e && std::binary_search(e->begin(), e->end(), imax)) {
      next = std::move(*e);
    } else {
      next = single_exchange(ref, r, imax, pb.cyclic);
    }
    if (next == ref) {
      throw ConvergenceError("solve_minimax: reference stagnated with gap " + std::to_string(err - level));
    }
    ref = std::move(next);
  }
  throw ConvergenceError("solve_minimax: no convergence after " + std::to_string(max_iter) +
                         " exchanges (error " + std::to_string(out.error) + ", level " +
                         std::to_string(out.level) + ")");
}

IrlsResult solve_irls(const IrlsProblem& pb, double p, double rel_tol, std::size_t max_iter, double floor) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("solve_irls: p must be finite and >= 1");
  const std::size_t m = pb.points;
  std::vector<double> r(m);
  auto objective = [&](std::span<const double> res) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double a = std::abs(res[i]);
      s += pb.base_weights[i] * (p == 1.0 ? a : (p == 2.0 ? a * a : std::pow(a, p)));
    }
    return s;
  };

  IrlsResult best;
  std::vector<double> c = pb.solve_weighted(pb.base_weights);
  pb.residual(c, r);
  double obj = objective(r);
  best = {c, obj, 0, false};
  if (p == 2.0) return best;

  // For p < 2 the weight floor starts near the residual scale and shrinks
  // geometrically to `floor`; the stopping test only applies once it is there.
  double eps = floor;
  if (p < 2.0) {
    double rmax = 0.0;
    for (double v : r) rmax = std::max(rmax, std::abs(v));
    eps = std::max(floor, 0.1 * rmax);
  }
  std::vector<double> w(m);
  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    for (std::size_t i = 0; i < m; ++i) {
      w[i] = pb.base_weights[i] * std::pow(std::max(std::abs(r[i]), eps), p - 2.0);
    }
    std::vector<double> cn = pb.solve_weighted(w);
    if (p > 2.0) {
      const double damp = 1.0 / (p - 1.0);
      for (std::size_t k = 0; k < c.size(); ++k) c[k] += damp * (cn[k] - c[k]);
    } else {
      c = std::move(cn);
    }
    pb.residual(c, r);
    const double next = objective(r);
    if (next < best.objective) best = {c, next, iter, false};
    best.iterations = iter;
    if (pb.certify && p == 1.0 && iter % 64 == 0) {
      if (auto opt = pb.certify(c, r); opt) {
        std::vector<double> rc(m);
        pb.residual(*opt, rc);
        const double v = objective(rc);
        if (v <= best.objective * (1.0 + 1e-12)) return {std::move(*opt), v, iter, true};
      }
    }
    const bool settled = std::abs(obj - next) <= rel_tol * next;
    if (eps <= floor && settled) return best;
    if (eps > floor && std::abs(obj - next) <= 1e-3 * next) eps = std::max(floor, 0.1 * eps);
    obj = next;
  }
  throw ConvergenceError("solve_irls: no convergence after " + std::to_string(max_iter) +
                         " iterations (objective " + std::to_string(best.objective) + ")");
}

}  // namespace vpa
