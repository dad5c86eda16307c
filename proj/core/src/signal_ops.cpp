// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ara/signal_ops.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "ara/fft.hpp"

namespace ara {

AudioSignal convolve(const AudioSignal& x, const AudioSignal& h) {
  validate(x, "convolve:x");
  validate(h, "convolve:h");
  if (x.sample_rate != h.sample_rate)
    throw DataError("convolve: sample rate mismatch");
  if (x.empty() || h.empty()) throw DataError("convolve: empty input");

  const std::size_t nx = x.size(), nh = h.size();
  const std::size_t out_len = nx + nh - 1;
  AudioSignal out;
  out.sample_rate = x.sample_rate;
  out.samples.assign(out_len, 0.0);

  if (std::min(nx, nh) <= 32) {
    const auto& a = nx >= nh ? x.samples : h.samples;
    const auto& b = nx >= nh ? h.samples : x.samples;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double bj = b[j];
      if (bj == 0.0) continue;
      for (std::size_t i = 0; i < a.size(); ++i) out.samples[i + j] += a[i] * bj;
    }
    return out;
  }

  const std::size_t nfft = fft::next_fast_size(out_len);
  std::vector<double> xa(nfft, 0.0), ha(nfft, 0.0);
  std::copy(x.samples.begin(), x.samples.end(), xa.begin());
  std::copy(h.samples.begin(), h.samples.end(), ha.begin());
  auto X = fft::rfft(xa);
  auto H = fft::rfft(ha);
  for (std::size_t k = 0; k < X.size(); ++k) X[k] *= H[k];
  auto y = fft::irfft(X, nfft);
  std::copy(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(out_len),
            out.samples.begin());
  return out;
}

double scale_for_snr(const AudioSignal& speech, const AudioSignal& noise,
                     double snr_db) {
  const std::size_t n = std::min(speech.size(), noise.size());
  const double es = energy(std::span<const double>(speech.samples.data(), n));
  const double en = energy(std::span<const double>(noise.samples.data(), n));
  if (es <= 0.0) throw DataError("scale_for_snr: zero-energy speech");
  if (en <= 0.0) throw DataError("scale_for_snr: zero-energy noise");
  // 10*log10(es / (a^2 en)) = snr  =>  a = sqrt(es/en) * 10^(-snr/20)
  return std::sqrt(es / en) * std::pow(10.0, -snr_db / 20.0);
}

AudioSignal tile_to_length(const AudioSignal& noise, std::size_t length) {
  if (noise.empty()) throw DataError("tile_to_length: empty noise");
  AudioSignal out;
  out.sample_rate = noise.sample_rate;
  out.samples.resize(length);
  for (std::size_t i = 0; i < length; ++i)
    out.samples[i] = noise.samples[i % noise.size()];
  return out;
}

AudioSignal mix_at_snr(const AudioSignal& speech, const AudioSignal& noise,
                       double snr_db, bool tile_noise) {
  validate(speech, "mix_at_snr:speech");
  validate(noise, "mix_at_snr:noise");
  if (speech.sample_rate != noise.sample_rate)
    throw DataError("mix_at_snr: sample rate mismatch");
  if (!std::isfinite(snr_db)) throw DataError("mix_at_snr: non-finite SNR");

  AudioSignal n = noise;
  if (noise.size() < speech.size()) {
    if (!tile_noise)
      throw DataError("mix_at_snr: noise shorter than speech (tiling disabled)");
    n = tile_to_length(noise, speech.size());
  }
  const double a = scale_for_snr(speech, n, snr_db);
  AudioSignal out;
  out.sample_rate = speech.sample_rate;
  out.samples.resize(speech.size());
  for (std::size_t i = 0; i < speech.size(); ++i)
    out.samples[i] = speech.samples[i] + a * n.samples[i];
  return out;
}

}  // namespace ara
