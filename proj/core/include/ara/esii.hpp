// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ara/audio_signal.hpp"

namespace ara {

/// Short-time band-audibility intelligibility score. Band importance
/// follows the ANSI S3.5 third-octave weighting, resampled onto 21
/// log-spaced centers spanning 160..8000 Hz and normalized to sum 1.
struct EsiiConfig {
  std::vector<double> band_centers;
  std::vector<double> band_importance;
  double window_ms = 12.5;
  double dynamic_range_db = 30.0;

  static EsiiConfig standard();
  void validate(int sample_rate) const;
};

struct IntelligibilityResult {
  double raw_esii = 0.0;
  double normalized_esii = 0.0;
  double delta_x100 = 0.0;
  // Slots for externally computed scores merged into reports.
  std::optional<double> asii_st;
  std::optional<double> srmr_norm;
};

/// Pointwise s - s_dir; lengths and sample rates must already agree.
AudioSignal extract_distortion(const AudioSignal& s, const AudioSignal& s_dir);

/// Mean over short windows of the importance-weighted band audibility of
/// `speech_ref` against `distortion` as masker. In [0, 1].
double esii(const AudioSignal& speech_ref, const AudioSignal& distortion,
            const EsiiConfig& cfg = EsiiConfig::standard());

/// raw / reference_raw, clamped to [0, 1.5] (values above 1 warn).
double normalized_esii(double raw, double reference_raw);

/// (processed - unprocessed) * 100.
double delta_score(double processed_norm, double unprocessed_norm);

/// Stationary Gaussian noise filtered to the long-term band spectrum of
/// `reference`, RMS-matched to it. Deterministic per seed.
AudioSignal speech_shaped_noise(const AudioSignal& reference,
                                std::size_t length, std::uint64_t seed);

}  // namespace ara
