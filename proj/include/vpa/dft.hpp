#pragma once

// Real-input DFT on the standard grid, backed by FFTW.

#include <complex>
#include <cstddef>
#include <span>

namespace vpa {

class RealDft {
 public:
  /// Shared instance for transform length n. Plans are created once per
  /// length and reused; execution is safe from several threads.
  static const RealDft& of_size(std::size_t n);

  std::size_t size() const { return n_; }

  /// out[k] = sum_j in[j] exp(-2 pi i j k / n), k = 0..n/2.
  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  /// out[j] = sum_{k=0}^{n-1} Y_k exp(2 pi i j k / n) where Y is the
  /// Hermitian extension of `in` (length n/2 + 1).
  void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

  RealDft(const RealDft&) = delete;
  RealDft& operator=(const RealDft&) = delete;
  ~RealDft();

 private:
  explicit RealDft(std::size_t n);

  std::size_t n_;
  void* forward_plan_;
  void* inverse_plan_;
};

}  // namespace vpa
