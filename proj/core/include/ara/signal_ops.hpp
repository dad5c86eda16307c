// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include "ara/audio_signal.hpp"

namespace ara {

/// Full linear convolution, length x.size() + h.size() - 1. FFT-based for
/// anything but trivially short filters. Sample rates must match.
AudioSignal convolve(const AudioSignal& x, const AudioSignal& h);

/// Scale factor a such that 10*log10(E(speech) / E(a*noise)) == snr_db,
/// using full-signal energies over the common length.
double scale_for_snr(const AudioSignal& speech, const AudioSignal& noise,
                     double snr_db);

/// Repeats `noise` (tiling from the start) until it reaches `length`.
AudioSignal tile_to_length(const AudioSignal& noise, std::size_t length);

/// speech + a*noise with `a` chosen by scale_for_snr. Noise shorter than
/// the speech is tiled when `tile_noise` is set, otherwise this is an error;
/// longer noise is truncated.
AudioSignal mix_at_snr(const AudioSignal& speech, const AudioSignal& noise,
                       double snr_db, bool tile_noise = true);

}  // namespace ara
