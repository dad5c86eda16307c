// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ara/errors.hpp"

namespace ara {

/// A mono sampled waveform. Amplitudes are dimensionless with nominal
/// range [-1, 1]; sample_rate is in Hz.
struct AudioSignal {
  std::vector<double> samples;
  int sample_rate = 0;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

inline double energy(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

inline double energy(const AudioSignal& s) { return energy(std::span<const double>(s.samples)); }

inline double rms(std::span<const double> x) {
  return x.empty() ? 0.0 : std::sqrt(energy(x) / static_cast<double>(x.size()));
}

inline double rms(const AudioSignal& s) { return rms(std::span<const double>(s.samples)); }

inline double peak_abs(std::span<const double> x) {
  double p = 0.0;
  for (double v : x) p = std::max(p, std::abs(v));
  return p;
}

inline double peak_abs(const AudioSignal& s) { return peak_abs(std::span<const double>(s.samples)); }

/// Throws DataError unless sample_rate > 0 and every sample is finite.
inline void validate(const AudioSignal& s, const char* what = "signal") {
  if (s.sample_rate <= 0)
    throw DataError(std::string(what) + ": sample rate must be positive");
  for (double v : s.samples)
    if (!std::isfinite(v))
      throw DataError(std::string(what) + ": non-finite sample");
}

}  // namespace ara
