// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <string>

#include "ara/audio_signal.hpp"

namespace ara {

enum class WavEncoding { Pcm16, Float32 };

/// Reads a RIFF/WAVE file (PCM 16-bit or IEEE float 32-bit, little endian).
/// Multichannel files yield channel 0 with a warning on stderr. PCM samples
/// are normalized by 1/32768.
AudioSignal load_wav(const std::string& path);

/// Writes `signal` to a WAV file. Pcm16 requires amplitudes in [-1, 1]
/// unless `clamp` is set, in which case out-of-range samples are clipped.
void save_wav(const AudioSignal& signal, const std::string& path,
              WavEncoding encoding = WavEncoding::Float32, bool clamp = false);

}  // namespace ara
