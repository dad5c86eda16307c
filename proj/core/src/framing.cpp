// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ara/framing.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

namespace ara {

std::vector<double> make_window(WindowKind kind, std::size_t len) {
  std::vector<double> w(len, 1.0);
  if (kind == WindowKind::Hann) {
    // Periodic Hann: exact constant overlap-add at 50% (and any len/2^k hop).
    for (std::size_t n = 0; n < len; ++n)
      w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                                  static_cast<double>(len));
  }
  return w;
}

FrameSequence frame_signal(const AudioSignal& signal, double frame_ms,
                           double overlap_frac, WindowKind window) {
  validate(signal, "frame_signal");
  if (overlap_frac < 0.0 || overlap_frac >= 1.0)
    throw DataError("frame_signal: overlap_frac must be in [0, 1)");
  const std::size_t frame_len = static_cast<std::size_t>(
      std::lround(frame_ms * 1e-3 * signal.sample_rate));
  if (frame_len < 2) throw DataError("frame_signal: frame shorter than 2 samples");
  std::size_t hop = static_cast<std::size_t>(
      std::lround(static_cast<double>(frame_len) * (1.0 - overlap_frac)));
  if (hop == 0) hop = 1;

  const std::size_t len = signal.size();
  std::size_t n_frames;
  if (len <= frame_len) {
    if (len < frame_len)
      std::cerr << "frame_signal: frame (" << frame_len
                << " samples) longer than signal (" << len << "); zero padding\n";
    n_frames = 1;
  } else {
    n_frames = 1 + (len - frame_len + hop - 1) / hop;  // cover the tail
  }

  FrameSequence fs;
  fs.frame_len = frame_len;
  fs.hop = hop;
  fs.n_frames = n_frames;
  fs.original_len = len;
  fs.sample_rate = signal.sample_rate;
  fs.window = make_window(window, frame_len);
  fs.data.assign(n_frames * frame_len, 0.0);
  for (std::size_t l = 0; l < n_frames; ++l) {
    const std::size_t start = l * hop;
    const std::size_t count = std::min(frame_len, len > start ? len - start : 0);
    for (std::size_t n = 0; n < count; ++n)
      fs.data[l * frame_len + n] = signal.samples[start + n];
  }
  return fs;
}

AudioSignal overlap_add(const FrameSequence& frames,
                        std::span<const double> gains) {
  if (gains.size() != frames.n_frames)
    throw DataError("overlap_add: gain count does not match frame count");
  for (double g : gains)
    if (!(g >= 0.0)) throw DataError("overlap_add: gains must be >= 0");

  const std::size_t span =
      frames.n_frames > 0
          ? (frames.n_frames - 1) * frames.hop + frames.frame_len
          : 0;
  std::vector<double> num(span, 0.0), den(span, 0.0);
  for (std::size_t l = 0; l < frames.n_frames; ++l) {
    const std::size_t start = l * frames.hop;
    const double g = gains[l];
    auto fr = frames.frame(l);
    for (std::size_t n = 0; n < frames.frame_len; ++n) {
      const double w = frames.window[n];
      num[start + n] += g * w * fr[n];
      den[start + n] += w;
    }
  }

  AudioSignal out;
  out.sample_rate = frames.sample_rate;
  out.samples.resize(frames.original_len);
  for (std::size_t i = 0; i < frames.original_len; ++i) {
    if (den[i] > 1e-12) {
      out.samples[i] = num[i] / den[i];
    } else {
      // Window weight vanished here (sample 0 of a Hann window): fall back
      // to the raw covering frame so reconstruction stays exact.
      const std::size_t l = std::min(i / frames.hop, frames.n_frames - 1);
      out.samples[i] = gains[l] * frames.frame(l)[i - l * frames.hop];
    }
  }
  return out;
}

}  // namespace ara
