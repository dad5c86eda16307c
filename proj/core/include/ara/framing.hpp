// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ara/audio_signal.hpp"

namespace ara {

enum class WindowKind { Hann, Rectangular };

/// Fixed-length frames taken at a regular hop. Frames store raw samples
/// (the tail frame is zero padded); `window` holds the synthesis weights
/// used by overlap_add.
struct FrameSequence {
  std::vector<double> data;  // n_frames * frame_len, row major
  std::size_t frame_len = 0;
  std::size_t hop = 0;
  std::size_t n_frames = 0;
  std::size_t original_len = 0;
  int sample_rate = 0;
  std::vector<double> window;

  std::span<const double> frame(std::size_t l) const {
    return {data.data() + l * frame_len, frame_len};
  }
  double frame_duration_s() const {
    return static_cast<double>(frame_len) / sample_rate;
  }
  double frame_start_s(std::size_t l) const {
    return static_cast<double>(l * hop) / sample_rate;
  }
};

std::vector<double> make_window(WindowKind kind, std::size_t len);

/// Splits `signal` into frames of `frame_ms` with fractional overlap
/// `overlap_frac` in [0, 1). Frames cover the whole signal; the last one
/// is zero padded. A frame longer than the signal yields a single padded
/// frame (with a warning on stderr).
FrameSequence frame_signal(const AudioSignal& signal, double frame_ms,
                           double overlap_frac,
                           WindowKind window = WindowKind::Hann);

/// Reassembles the signal with one multiplicative gain per frame. The
/// synthesis weighting is normalized by the window overlap sum, so unit
/// gains reconstruct the input exactly and constant gains scale it.
AudioSignal overlap_add(const FrameSequence& frames,
                        std::span<const double> gains);

}  // namespace ara
