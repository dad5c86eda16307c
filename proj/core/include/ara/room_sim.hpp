// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <array>
#include <cstdint>

#include "ara/audio_signal.hpp"

namespace ara {

/// Cuboid room with one source and one microphone, simulated with the
/// image source method at a uniform wall absorption chosen for target_t60.
struct RoomSpec {
  std::array<double, 3> dimensions{7.0, 5.2, 3.0};  // meters
  std::array<double, 3> source_pos{2.0, 3.1, 1.5};
  std::array<double, 3> mic_pos{4.5, 2.2, 1.5};
  double target_t60 = 1.0;  // seconds
  int sample_rate = 16000;
  int max_order = -1;  // reflection-order cap; -1 = bounded by RIR length

  void validate() const;
};

struct RirMetrics {
  double t60_s = 0.0;
  double drr_db = 0.0;
  double total_energy_db = 0.0;
};

/// Image-source-method room impulse response. Sub-sample arrival times use
/// 81-tap windowed-sinc interpolation; reflections (never the direct path)
/// are dithered by up to half a sample, deterministically per seed.
AudioSignal ism_rir(const RoomSpec& spec, std::uint64_t rng_seed = 0);

/// Reverberation time from Schroeder backward integration: linear fit of
/// the energy decay curve over [-5, -35] dB, extrapolated to 60 dB.
double estimate_t60(const AudioSignal& rir);

/// 10*log10 of direct-window energy (peak +/- direct_window_ms) over the
/// remainder. A tail-free impulse yields +infinity.
double estimate_drr(const AudioSignal& rir, double direct_window_ms = 2.5);

/// Scales so that 10*log10(sum h^2) equals target_db.
AudioSignal equalize_energy(const AudioSignal& rir, double target_db);

/// The RIR with everything outside peak +/- window_ms zeroed out.
AudioSignal direct_path_rir(const AudioSignal& rir, double window_ms = 2.5);

/// x convolved with only the direct-path portion of the RIR.
AudioSignal direct_path_signal(const AudioSignal& x, const AudioSignal& rir,
                               double window_ms = 2.5);

RirMetrics measure_rir(const AudioSignal& rir);

}  // namespace ara
