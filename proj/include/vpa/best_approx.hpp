#pragma once

// Best trigonometric approximation, globally and on windows.
//
//   E_n(f)_p        = min over T in H_n of ||f - T||_p on the sample grid
//   E_n(f, x; d)    = min over T of ||f - T||_{x,d}     (sup variant)
//   E°_n(f, x; d)   = min over T of ||f - T||°_{x,d}    (fixed variant)
//   F_{n,m}(f, x)   = (1/(m+1)) sum_{k=0}^{m} E_n(f, x; pi/(k+1))
//
// The harness evaluates windowed errors through the global minimiser
// (ViaGlobal). Direct minimises over the window itself and serves as the
// reference for that shortcut.

#include <cstddef>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string_view>
#include <utility>
#include <vector>

#include "vpa/fourier.hpp"
#include "vpa/local_norms.hpp"
#include "vpa/minimax.hpp"

namespace vpa {

enum class BestApproxMethod { ExactL2, ExchangeMinimax, IterativeP, WindowDirect };

std::string_view to_string(BestApproxMethod m);

struct BestApproxResult {
  std::size_t n = 0;
  LebesgueExponent p = LebesgueExponent::infinity();
  TrigPolynomial polynomial;
  double error = 0.0;
  BestApproxMethod method = BestApproxMethod::ExactL2;
  std::size_t iterations = 0;
};

/// E_n(f) and its minimiser on the sample grid. p = 2 projects onto H_n,
/// p = inf runs the exchange algorithm on all N nodes, other finite p use
/// IRLS. Requires N >= 4n. Throws ConvergenceError if a solver stalls.
BestApproxResult best_global(const GridFunction& f, std::size_t n, LebesgueExponent p);

/// ||f - t|| under the window w.
double windowed_error(const GridFunction& f, const TrigPolynomial& t, const WindowSpec& w);

enum class WindowedMethod { ViaGlobal, Direct };

std::string_view to_string(WindowedMethod m);

/// Memo of best_global results for one function. Lookups may run
/// concurrently; a missing entry is computed outside the lock and the first
/// insertion wins, so results never depend on timing.
class BestApproxCache {
 public:
  explicit BestApproxCache(const GridFunction& f) : f_(&f) {}

  const GridFunction& function() const { return *f_; }
  std::shared_ptr<const BestApproxResult> get(std::size_t n, LebesgueExponent p) const;

 private:
  const GridFunction* f_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::pair<std::size_t, LebesgueExponent>, std::shared_ptr<const BestApproxResult>> entries_;
};

/// Direct minimisation over the samples of one window.
struct WindowFit {
  double error = 0.0;        // attained windowed norm
  double lower_bound = 0.0;  // certified lower bound from the solver
  std::size_t iterations = 0;
};

/// Minimises ||f - T||_w over T in H_n using only samples of the window.
/// p = inf: exchange on the window (at least 2n+2 samples required).
/// Finite p, fixed variant: weighted least squares / IRLS. Finite p, sup
/// variant: multiplicative-weights minimax over radii in H(delta).
WindowFit best_windowed_direct(const GridFunction& f, std::size_t n, const WindowSpec& w);

/// E_n(f, x; delta) for the window w.
double E_windowed(const BestApproxCache& cache, std::size_t n, const WindowSpec& w, WindowedMethod method);

/// E values at delta_k = pi/(k+1), k = 0..m, and their mean F_{n,m}.
struct FTable {
  std::size_t n = 0;
  std::size_t m = 0;
  double x = 0.0;
  LebesgueExponent p = LebesgueExponent::infinity();
  WindowVariant variant = WindowVariant::SupOverH;
  std::vector<double> entries;
  double average = 0.0;

  static double delta(std::size_t k) { return kPi / static_cast<double>(k + 1); }
};

/// F_{n,m}(f, x) (sup variant) or F°_{n,m}(f, x) (fixed variant), ViaGlobal.
FTable F_average(const BestApproxCache& cache, std::size_t n, std::size_t m, double x, LebesgueExponent p,
                 WindowVariant variant);

}  // namespace vpa
