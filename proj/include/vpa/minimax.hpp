#pragma once

// Linear best approximation on finite point sets: discrete minimax by
// multi-point exchange, and weighted L^p by iteratively reweighted least
// squares. The callers supply the basis and residual evaluation, so the same
// loops serve the full periodic grid and windows of it.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace vpa {

/// An iterative solver stopped without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExchangeProblem {
  std::size_t points = 0;
  std::size_t dim = 0;
  /// Points lie on a circle (alternation is counted cyclically).
  bool cyclic = false;
  /// Basis row at point i (length dim).
  std::function<void(std::size_t i, std::span<double> row)> row;
  /// Target value at point i.
  std::function<double(std::size_t i)> value;
  /// residual[i] = value(i) - sum_k coeffs[k] * row(i)[k] for all points.
  std::function<void(std::span<const double> coeffs, std::span<double> residual)> residual;
};

struct ExchangeResult {
  std::vector<double> coeffs;
  double level = 0.0;  // |E| on the final reference, a lower bound
  double error = 0.0;  // max |residual|, attained by coeffs
  std::size_t iterations = 0;
};

/// Minimises max_i |residual_i| over the coefficient space. Stops when
/// error - level <= rel_tol * (1 + error). Throws ConvergenceError after
/// max_iter exchanges.
ExchangeResult solve_minimax(const ExchangeProblem& problem, std::span<const double> initial,
                             double rel_tol = 1e-8, std::size_t max_iter = 200);

struct IrlsProblem {
  std::size_t points = 0;
  std::size_t dim = 0;
  /// Quadrature weight of each point (objective is sum w_i |r_i|^p).
  std::vector<double> base_weights;
  /// Weighted least-squares solve: argmin_c sum weights_i r_i(c)^2.
  std::function<std::vector<double>(std::span<const double> weights)> solve_weighted;
  std::function<void(std::span<const double> coeffs, std::span<double> residual)> residual;
  /// Optional, p = 1 only: given the current iterate and its residual,
  /// return coefficients proven optimal, or nothing. Tried every few steps.
  std::function<std::optional<std::vector<double>>(std::span<const double> coeffs, std::span<const double> residual)>
      certify;
};

struct IrlsResult {
  std::vector<double> coeffs;
  double objective = 0.0;  // sum w_i |r_i|^p at coeffs
  std::size_t iterations = 0;
  bool certified = false;  // optimality proven by `certify`
};

/// Minimises sum_i w_i |r_i|^p for p >= 1. Weights are floored at
/// |r| >= floor; steps are damped by 1/(p-1) for p > 2. Stops once the
/// relative objective change is below rel_tol; throws ConvergenceError
/// after max_iter iterations.
IrlsResult solve_irls(const IrlsProblem& problem, double p, double rel_tol = 1e-10,
                      std::size_t max_iter = 500, double floor = 1e-9);

}  // namespace vpa
