// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ara/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace ara::synth {
namespace {

double formant_shape(double f, double f1, double f2, double f3) {
  auto bump = [](double f, double fc, double bw) {
    const double x = (std::log(f) - std::log(fc)) / (bw / fc);
    return std::exp(-0.5 * x * x);
  };
  return 0.1 + bump(f, f1, 220.0) + 0.7 * bump(f, f2, 350.0) +
         0.35 * bump(f, f3, 600.0);
}

}  // namespace

AudioSignal speech_like(double seconds, int sample_rate, std::uint64_t seed) {
  if (seconds <= 0.0 || sample_rate <= 0)
    throw DataError("speech_like: invalid duration or rate");
  const auto n = static_cast<std::size_t>(std::lround(seconds * sample_rate));
  AudioSignal out;
  out.sample_rate = sample_rate;
  out.samples.assign(n, 0.0);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  const double fs = sample_rate;
  std::size_t t = static_cast<std::size_t>(uni(rng) * 0.05 * fs);
  int syllable = 0;
  while (t < n) {
    const double burst_s = 0.12 + 0.23 * uni(rng);
    const double gap_s = (++syllable % 5 == 0) ? 0.25 + 0.25 * uni(rng)
                                               : 0.04 + 0.14 * uni(rng);
    const auto burst = static_cast<std::size_t>(burst_s * fs);
    const double f0 = 95.0 + 135.0 * uni(rng);
    const double drift = (uni(rng) - 0.5) * 0.16;  // +/- 8% over the burst
    const double f1 = 300.0 + 500.0 * uni(rng);
    const double f2 = 900.0 + 900.0 * uni(rng);
    const double f3 = 2000.0 + 1200.0 * uni(rng);
    const double att = (0.02 + 0.02 * uni(rng)) * fs;

    const int max_harm = static_cast<int>(std::min(4000.0, fs / 2.0 * 0.9) / f0);
    std::vector<double> amp(static_cast<std::size_t>(max_harm) + 1, 0.0);
    std::vector<double> phase(amp.size(), 0.0);
    for (int h = 1; h <= max_harm; ++h) {
      amp[h] = formant_shape(h * f0, f1, f2, f3) / h;
      phase[h] = uni(rng) * 2.0 * std::numbers::pi;
    }

    double inst_phase_base = 0.0;
    for (std::size_t i = 0; i < burst && t + i < n; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(burst);
      const double f = f0 * (1.0 + drift * x);
      inst_phase_base += 2.0 * std::numbers::pi * f / fs;
      double env = 1.0;
      if (static_cast<double>(i) < att) env = static_cast<double>(i) / att;
      const double rel = static_cast<double>(burst - i);
      if (rel < att) env = std::min(env, rel / att);
      env *= 0.8 + 0.2 * std::sin(2.0 * std::numbers::pi * 4.0 * x);  // syllabic AM
      double v = 0.0;
      for (int h = 1; h <= max_harm; ++h)
        v += amp[h] * std::sin(h * inst_phase_base + phase[h]);
      out.samples[t + i] += env * v;
    }
    t += burst;

    // Occasional fricative-like burst: short high-band noise.
    if (uni(rng) < 0.3 && t < n) {
      const auto fric = static_cast<std::size_t>((0.06 + 0.06 * uni(rng)) * fs);
      std::normal_distribution<double> gauss(0.0, 1.0);
      double hp_prev = 0.0, in_prev = 0.0;
      for (std::size_t i = 0; i < fric && t + i < n; ++i) {
        const double w = gauss(rng);
        // First-order high-pass around 2 kHz.
        const double a = std::exp(-2.0 * std::numbers::pi * 2000.0 / fs);
        const double hp = a * (hp_prev + w - in_prev);
        hp_prev = hp;
        in_prev = w;
        const double x = static_cast<double>(i) / static_cast<double>(fric);
        out.samples[t + i] += 0.25 * hp * std::sin(std::numbers::pi * x);
      }
      t += fric;
    }
    t += static_cast<std::size_t>(gap_s * fs);
  }

  const double cur = rms(out);
  if (cur > 0.0) {
    const double k = 0.1 / cur;
    for (double& v : out.samples) v *= k;
  }
  return out;
}

AudioSignal white_noise(std::size_t n, int sample_rate, std::uint64_t seed,
                        double target_rms) {
  AudioSignal out;
  out.sample_rate = sample_rate;
  out.samples.resize(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, target_rms);
  for (double& v : out.samples) v = gauss(rng);
  return out;
}

}  // namespace ara::synth
