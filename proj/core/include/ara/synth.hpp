// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>

#include "ara/audio_signal.hpp"

namespace ara::synth {

/// Speech-like test utterance: AM-modulated harmonic syllable bursts with
/// drifting pitch, formant-shaped spectra, occasional fricative noise and
/// silent gaps. RMS 0.1, deterministic per seed.
AudioSignal speech_like(double seconds, int sample_rate, std::uint64_t seed);

/// White Gaussian noise at the given RMS.
AudioSignal white_noise(std::size_t n, int sample_rate, std::uint64_t seed,
                        double rms = 1.0);

}  // namespace ara::synth
