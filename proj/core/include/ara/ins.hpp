// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ara/audio_signal.hpp"

namespace ara {

/// Configuration for the surrogate-based index of non-stationarity test.
/// Each scale is an observation-window fraction T_h/T of the segment under
/// test; every scale must leave room for a window of >= 8 samples and at
/// least two window positions at 50% window overlap.
struct InsConfig {
  int n_surrogates = 50;
  int n_tapers = 5;
  std::vector<double> scales = default_scales();
  double confidence = 0.95;
  std::uint64_t rng_seed = 0;

  /// n log-spaced observation scales in [lo, hi].
  static std::vector<double> default_scales(int n = 10, double lo = 0.02,
                                            double hi = 0.49);
  /// Reduced configuration for per-frame use: 20 surrogates, 4 scales
  /// giving 64..256-sample windows inside a 512-sample frame.
  static InsConfig fast_frame_mode(std::uint64_t seed = 0);

  void validate() const;
};

/// Per-scale test outcome: the INS statistic, its stationarity threshold
/// gamma, and the verdict ins > gamma.
struct InsProfile {
  std::vector<double> scales;
  std::vector<double> ins;
  std::vector<double> gamma;
  std::vector<bool> is_nonstationary;

  double max_ins() const;
  std::size_t n_scales() const { return scales.size(); }
};

/// Multitaper spectrogram: positions x one-sided frequency bins of
/// nonnegative power. Scaled so the power summed over bins at one position
/// equals the mean tapered-segment energy.
struct TimeFrequencyRepr {
  std::vector<double> power;  // n_positions * n_bins, row major
  std::size_t n_positions = 0;
  std::size_t n_bins = 0;

  double at(std::size_t pos, std::size_t bin) const {
    return power[pos * n_bins + bin];
  }
  std::span<const double> row(std::size_t pos) const {
    return {power.data() + pos * n_bins, n_bins};
  }
};

/// Phase-randomized copies of `signal` preserving its magnitude spectrum
/// (hence its total energy). Deterministic per cfg.rng_seed; surrogate j
/// always sees the same phase stream regardless of thread scheduling.
std::vector<AudioSignal> make_surrogates(const AudioSignal& signal,
                                         const InsConfig& cfg);

/// Window start indices at 50% window overlap, skipping any position whose
/// window would overrun the segment.
std::vector<std::size_t> spectrogram_positions(std::size_t signal_len,
                                               std::size_t window_len);

/// Power spectrum averaged over orthonormal Hermite tapers at each window
/// start position.
TimeFrequencyRepr multitaper_spectrogram(std::span<const double> x,
                                         std::size_t window_len, int n_tapers,
                                         std::span<const std::size_t> positions);

/// Runs the full surrogate test at every configured scale. All-zero
/// segments are reported stationary with ins = 0 at every scale.
InsProfile ins_profile(const AudioSignal& signal, const InsConfig& cfg);

}  // namespace ara
