// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ara/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace ara::fft {
namespace {

// FFTW planning is not thread safe; new-array execution is. Plans are
// created once per size with FFTW_UNALIGNED so they can run on any buffer.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan forward_plan(std::size_t n) {
  static std::map<std::size_t, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(n / 2 + 1);
  fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(in);
  fftw_free(out);
  if (!p) throw std::runtime_error("fftw: failed to create r2c plan");
  cache.emplace(n, p);
  return p;
}

fftw_plan inverse_plan(std::size_t n) {
  static std::map<std::size_t, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  fftw_complex* in = fftw_alloc_complex(n / 2 + 1);
  double* out = fftw_alloc_real(n);
  fftw_plan p = fftw_plan_dft_c2r_1d(static_cast<int>(n), in, out,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(in);
  fftw_free(out);
  if (!p) throw std::runtime_error("fftw: failed to create c2r plan");
  cache.emplace(n, p);
  return p;
}

}  // namespace

std::vector<std::complex<double>> rfft(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  fftw_plan p = forward_plan(n);
  std::vector<double> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_execute_dft_r2c(p, in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> irfft(std::span<const std::complex<double>> spectrum,
                          std::size_t n) {
  if (n == 0) return {};
  if (spectrum.size() != n / 2 + 1)
    throw std::invalid_argument("irfft: spectrum size does not match n");
  fftw_plan p = inverse_plan(n);
  // c2r destroys its input, so work on a copy.
  std::vector<std::complex<double>> in(spectrum.begin(), spectrum.end());
  std::vector<double> out(n);
  fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(in.data()),
                       out.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
  return out;
}

std::size_t next_fast_size(std::size_t n) {
  if (n <= 2) return std::max<std::size_t>(n, 1);
  for (;; ++n) {
    std::size_t m = n;
    while (m % 2 == 0) m /= 2;
    while (m % 3 == 0) m /= 3;
    while (m % 5 == 0) m /= 5;
    if (m == 1) return n;
  }
}

}  // namespace ara::fft
