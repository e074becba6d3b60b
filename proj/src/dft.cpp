#include "vpa/dft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace vpa {

namespace {

// FFTW's planner is not thread-safe; every plan is made under this lock.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

const RealDft& RealDft::of_size(std::size_t n) {
  static std::map<std::size_t, std::unique_ptr<RealDft>> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::unique_ptr<RealDft>(new RealDft(n))).first;
  }
  return *it->second;
}

RealDft::RealDft(std::size_t n) : n_(n) {
  if (n < 2 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("RealDft: length must be a power of two >= 2");
  }
  double* real = fftw_alloc_real(n);
  fftw_complex* spec = fftw_alloc_complex(n / 2 + 1);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real, spec, flags);
  inverse_plan_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec, real, flags | FFTW_DESTROY_INPUT);
  fftw_free(real);
  fftw_free(spec);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) {
    throw std::runtime_error("RealDft: FFTW planning failed");
  }
}

RealDft::~RealDft() {
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void RealDft::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
  if (in.size() != n_ || out.size() != n_ / 2 + 1) {
    throw std::invalid_argument("RealDft::forward: size mismatch");
  }
  // r2c leaves its input intact, but the API takes a non-const pointer.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void RealDft::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
  if (in.size() != n_ / 2 + 1 || out.size() != n_) {
    throw std::invalid_argument("RealDft::inverse: size mismatch");
  }
  std::vector<std::complex<double>> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

}  // namespace vpa
