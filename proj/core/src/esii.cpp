// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ara/esii.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <random>

#include "ara/fft.hpp"
#include "ara/signal_ops.hpp"

namespace ara {
namespace {

// ANSI S3.5 third-octave band importance (speech material "general"),
// centers 160..8000 Hz; sums to 1.
constexpr int kAnsiBands = 18;
constexpr double kAnsiCenters[kAnsiBands] = {
    160,  200,  250,  315,  400,  500,  630,  800,  1000,
    1250, 1600, 2000, 2500, 3150, 4000, 5000, 6300, 8000};
constexpr double kAnsiImportance[kAnsiBands] = {
    0.0083, 0.0095, 0.0150, 0.0289, 0.0440, 0.0578, 0.0653, 0.0711, 0.0818,
    0.0844, 0.0882, 0.0898, 0.0868, 0.0844, 0.0771, 0.0527, 0.0364, 0.0185};

double interp_importance(double f) {
  const double lf = std::log10(f);
  if (lf <= std::log10(kAnsiCenters[0])) return kAnsiImportance[0];
  for (int i = 0; i + 1 < kAnsiBands; ++i) {
    const double l0 = std::log10(kAnsiCenters[i]), l1 = std::log10(kAnsiCenters[i + 1]);
    if (lf <= l1) {
      const double t = (lf - l0) / (l1 - l0);
      return kAnsiImportance[i] + t * (kAnsiImportance[i + 1] - kAnsiImportance[i]);
    }
  }
  return kAnsiImportance[kAnsiBands - 1];
}

// Geometric band edges around the configured centers; the top edge is
// clamped to Nyquist.
std::vector<double> band_edges(const std::vector<double>& centers, double nyquist) {
  const std::size_t n = centers.size();
  std::vector<double> edges(n + 1);
  for (std::size_t i = 1; i < n; ++i) edges[i] = std::sqrt(centers[i - 1] * centers[i]);
  edges[0] = centers[0] * centers[0] / edges[1];
  edges[n] = std::min(centers[n - 1] * centers[n - 1] / edges[n - 1], nyquist);
  return edges;
}

std::vector<double> band_power(std::span<const double> seg, std::size_t nfft,
                               const std::vector<int>& bin_band,
                               std::size_t n_bands) {
  std::vector<double> padded(nfft, 0.0);
  std::copy(seg.begin(), seg.end(), padded.begin());
  const auto spec = fft::rfft(padded);
  std::vector<double> p(n_bands, 0.0);
  for (std::size_t b = 0; b < spec.size(); ++b)
    if (bin_band[b] >= 0) p[static_cast<std::size_t>(bin_band[b])] += std::norm(spec[b]);
  return p;
}

}  // namespace

EsiiConfig EsiiConfig::standard() {
  EsiiConfig cfg;
  const int n = 21;
  const double lo = 160.0, hi = 8000.0;
  cfg.band_centers.resize(n);
  cfg.band_importance.resize(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    cfg.band_centers[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    cfg.band_importance[i] = interp_importance(cfg.band_centers[i]);
    sum += cfg.band_importance[i];
  }
  for (double& w : cfg.band_importance) w /= sum;
  return cfg;
}

void EsiiConfig::validate(int sample_rate) const {
  if (band_centers.empty() || band_centers.size() != band_importance.size())
    throw DataError("EsiiConfig: centers/importance size mismatch");
  double sum = 0.0;
  for (double w : band_importance) {
    if (w < 0.0) throw DataError("EsiiConfig: negative importance weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw DataError("EsiiConfig: importance weights must sum to 1");
  const double nyquist = sample_rate / 2.0;
  const auto edges = band_edges(band_centers, nyquist);
  for (std::size_t i = 0; i < band_centers.size(); ++i)
    if (edges[i] >= nyquist)
      throw DataError("EsiiConfig: band outside Nyquist range");
  if (!(window_ms > 0.0)) throw DataError("EsiiConfig: window_ms must be > 0");
}

AudioSignal extract_distortion(const AudioSignal& s, const AudioSignal& s_dir) {
  validate(s, "extract_distortion:s");
  validate(s_dir, "extract_distortion:s_dir");
  if (s.sample_rate != s_dir.sample_rate)
    throw DataError("extract_distortion: sample rate mismatch");
  if (s.size() != s_dir.size())
    throw DataError("extract_distortion: length mismatch (trim/align first)");
  AudioSignal d;
  d.sample_rate = s.sample_rate;
  d.samples.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    d.samples[i] = s.samples[i] - s_dir.samples[i];
  return d;
}

double esii(const AudioSignal& speech_ref, const AudioSignal& distortion,
            const EsiiConfig& cfg) {
  validate(speech_ref, "esii:ref");
  validate(distortion, "esii:distortion");
  if (speech_ref.sample_rate != distortion.sample_rate)
    throw DataError("esii: sample rate mismatch");
  if (speech_ref.size() != distortion.size())
    throw DataError("esii: length mismatch");
  cfg.validate(speech_ref.sample_rate);

  const auto win = static_cast<std::size_t>(
      std::lround(cfg.window_ms * 1e-3 * speech_ref.sample_rate));
  if (win < 8 || speech_ref.size() < win)
    throw DataError("esii: signal shorter than one analysis window");
  const std::size_t n_windows = speech_ref.size() / win;

  // Zero-padded FFT fine enough that every band holds at least one bin.
  std::size_t nfft = 1;
  while (nfft < win * 4) nfft <<= 1;
  const double bin_hz = static_cast<double>(speech_ref.sample_rate) / static_cast<double>(nfft);
  const std::size_t n_bands = cfg.band_centers.size();
  const auto edges = band_edges(cfg.band_centers, speech_ref.sample_rate / 2.0);
  std::vector<int> bin_band(nfft / 2 + 1, -1);
  for (std::size_t b = 0; b < bin_band.size(); ++b) {
    const double f = static_cast<double>(b) * bin_hz;
    for (std::size_t k = 0; k < n_bands; ++k)
      if (f >= edges[k] && f < edges[k + 1]) {
        bin_band[b] = static_cast<int>(k);
        break;
      }
  }

  const double half_range = cfg.dynamic_range_db / 2.0;
  double total = 0.0;
  for (std::size_t wdx = 0; wdx < n_windows; ++wdx) {
    std::span<const double> ref(speech_ref.samples.data() + wdx * win, win);
    std::span<const double> dist(distortion.samples.data() + wdx * win, win);
    const auto pr = band_power(ref, nfft, bin_band, n_bands);
    const auto pd = band_power(dist, nfft, bin_band, n_bands);
    double sii = 0.0;
    for (std::size_t k = 0; k < n_bands; ++k) {
      double audibility;
      if (pd[k] <= 0.0) {
        audibility = 1.0;  // no masker in this band
      } else if (pr[k] <= 0.0) {
        audibility = 0.0;
      } else {
        const double diff_db = 10.0 * std::log10(pr[k] / pd[k]);
        audibility = std::clamp((diff_db + half_range) / cfg.dynamic_range_db, 0.0, 1.0);
      }
      sii += cfg.band_importance[k] * audibility;
    }
    total += sii;
  }
  return total / static_cast<double>(n_windows);
}

double normalized_esii(double raw, double reference_raw) {
  if (!(reference_raw > 0.0))
    throw DataError("normalized_esii: reference must be > 0");
  const double r = raw / reference_raw;
  if (r > 1.0)
    std::cerr << "normalized_esii: score " << r << " above reference\n";
  return std::clamp(r, 0.0, 1.5);
}

double delta_score(double processed_norm, double unprocessed_norm) {
  return (processed_norm - unprocessed_norm) * 100.0;
}

AudioSignal speech_shaped_noise(const AudioSignal& reference,
                                std::size_t length, std::uint64_t seed) {
  validate(reference, "speech_shaped_noise");
  if (reference.size() < 1024)
    throw DataError("speech_shaped_noise: reference too short");
  if (energy(reference) <= 0.0)
    throw DataError("speech_shaped_noise: silent reference");
  if (length == 0) throw DataError("speech_shaped_noise: zero length");

  // Long-term average power spectrum of the reference (Welch, Hann, 50%).
  const std::size_t w = 1024;
  std::vector<double> window(w);
  for (std::size_t i = 0; i < w; ++i)
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi *
                                     static_cast<double>(i) / static_cast<double>(w));
  std::vector<double> avg(w / 2 + 1, 0.0);
  std::size_t count = 0;
  std::vector<double> buf(w);
  for (std::size_t start = 0; start + w <= reference.size(); start += w / 2) {
    for (std::size_t i = 0; i < w; ++i)
      buf[i] = reference.samples[start + i] * window[i];
    const auto spec = fft::rfft(buf);
    for (std::size_t b = 0; b < avg.size(); ++b) avg[b] += std::norm(spec[b]);
    ++count;
  }
  for (double& v : avg) v /= static_cast<double>(count);

  // Zero-phase FIR whose magnitude is the square root of that spectrum.
  const std::size_t half = 256;
  std::vector<std::complex<double>> mag(avg.size());
  for (std::size_t b = 0; b < avg.size(); ++b) mag[b] = std::sqrt(avg[b]);
  auto kernel_full = fft::irfft(mag, w);
  std::vector<double> kernel(2 * half + 1);
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    const long src = static_cast<long>(i) - static_cast<long>(half);
    const std::size_t wrapped = static_cast<std::size_t>((src + static_cast<long>(w)) % static_cast<long>(w));
    const double taper =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                             static_cast<double>(kernel.size() - 1));
    kernel[i] = kernel_full[wrapped] * taper;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  AudioSignal white;
  white.sample_rate = reference.sample_rate;
  white.samples.resize(length + kernel.size());
  for (double& v : white.samples) v = gauss(rng);

  AudioSignal fir;
  fir.sample_rate = reference.sample_rate;
  fir.samples = kernel;
  AudioSignal shaped = convolve(white, fir);

  AudioSignal out;
  out.sample_rate = reference.sample_rate;
  out.samples.assign(shaped.samples.begin() + static_cast<std::ptrdiff_t>(half),
                     shaped.samples.begin() + static_cast<std::ptrdiff_t>(half + length));
  const double target_rms = rms(reference);
  const double cur = rms(out);
  if (cur > 0.0)
    for (double& v : out.samples) v *= target_rms / cur;
  return out;
}

}  // namespace ara
