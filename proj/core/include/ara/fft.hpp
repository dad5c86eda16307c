// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ara::fft {

/// Real-to-complex FFT; returns n/2 + 1 bins. Thread safe.
std::vector<std::complex<double>> rfft(std::span<const double> x);

/// Inverse of rfft for a real signal of length n (output scaled by 1/n).
std::vector<double> irfft(std::span<const std::complex<double>> spectrum,
                          std::size_t n);

/// Smallest size >= n whose prime factors are all in {2, 3, 5}.
std::size_t next_fast_size(std::size_t n);

}  // namespace ara::fft
