// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ara/room_sim.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>

#include "ara/signal_ops.hpp"

namespace ara {
namespace {

constexpr double kSpeedOfSound = 343.0;  // m/s
constexpr int kSincHalfTaps = 40;        // 81-tap interpolation kernel

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

// Deposit one arrival at fractional sample time `t` with amplitude `a`.
void add_arrival(std::vector<double>& h, double t, double a) {
  const auto center = static_cast<long>(std::lround(t));
  const double frac = t - static_cast<double>(center);
  for (int i = -kSincHalfTaps; i <= kSincHalfTaps; ++i) {
    const long idx = center + i;
    if (idx < 0 || idx >= static_cast<long>(h.size())) continue;
    const double u = static_cast<double>(i) - frac;
    // Hann-windowed sinc, window spanning the kernel support.
    const double w =
        0.5 * (1.0 + std::cos(std::numbers::pi * u / (kSincHalfTaps + 1)));
    h[static_cast<std::size_t>(idx)] += a * sinc(u) * w;
  }
}

}  // namespace

void RoomSpec::validate() const {
  for (double d : dimensions)
    if (!(d > 0.0)) throw DataError("RoomSpec: dimensions must be positive");
  for (int i = 0; i < 3; ++i) {
    if (!(source_pos[i] > 0.0 && source_pos[i] < dimensions[i]))
      throw DataError("RoomSpec: source outside room");
    if (!(mic_pos[i] > 0.0 && mic_pos[i] < dimensions[i]))
      throw DataError("RoomSpec: microphone outside room");
  }
  if (!(target_t60 > 0.0)) throw DataError("RoomSpec: target_t60 must be > 0");
  if (sample_rate <= 0) throw DataError("RoomSpec: sample_rate must be > 0");
}

AudioSignal ism_rir(const RoomSpec& spec, std::uint64_t rng_seed) {
  spec.validate();
  const double fs = spec.sample_rate;
  const auto [lx, ly, lz] = spec.dimensions;
  const double volume = lx * ly * lz;
  const double surface = 2.0 * (lx * ly + lx * lz + ly * lz);

  // Uniform absorption for the target decay. The Sabine estimate
  // 0.161 V / (S T60) overshoots the decay rate once absorption is no
  // longer small; the Eyring inversion keeps the realized T60 on target
  // across the whole 0.3..2 s range.
  const double sabine = 0.161 * volume / (surface * spec.target_t60);
  double absorption = 1.0 - std::exp(-sabine);
  if (sabine >= 1.0) {
    std::cerr << "ism_rir: target T60 " << spec.target_t60
              << " s needs absorption " << sabine
              << " (> 1); clamping to the shortest achievable decay\n";
    absorption = std::min(absorption, 0.9999);
  }
  const double beta = std::sqrt(1.0 - absorption);  // wall reflection coeff

  const double direct_dist = std::sqrt(
      (spec.source_pos[0] - spec.mic_pos[0]) * (spec.source_pos[0] - spec.mic_pos[0]) +
      (spec.source_pos[1] - spec.mic_pos[1]) * (spec.source_pos[1] - spec.mic_pos[1]) +
      (spec.source_pos[2] - spec.mic_pos[2]) * (spec.source_pos[2] - spec.mic_pos[2]));
  // Enough tail for the -60 dB fit region plus margin.
  const double tail_s = 1.5 * spec.target_t60 + direct_dist / kSpeedOfSound;
  const std::size_t rir_len =
      static_cast<std::size_t>(std::ceil(tail_s * fs)) + 2 * kSincHalfTaps + 2;
  const double max_dist = kSpeedOfSound * (static_cast<double>(rir_len) / fs);

  std::array<long, 3> n_images;
  for (int i = 0; i < 3; ++i)
    n_images[i] = static_cast<long>(
        std::ceil(max_dist / (2.0 * spec.dimensions[i]))) + 1;

  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> dither(-0.5, 0.5);

  std::vector<double> h(rir_len, 0.0);
  for (long mx = -n_images[0]; mx <= n_images[0]; ++mx) {
    for (long my = -n_images[1]; my <= n_images[1]; ++my) {
      for (long mz = -n_images[2]; mz <= n_images[2]; ++mz) {
        for (int q = 0; q <= 1; ++q) {
          for (int j = 0; j <= 1; ++j) {
            for (int k = 0; k <= 1; ++k) {
              const int order = std::abs(2 * static_cast<int>(mx) - q) +
                                std::abs(2 * static_cast<int>(my) - j) +
                                std::abs(2 * static_cast<int>(mz) - k);
              if (spec.max_order >= 0 && order > spec.max_order) continue;
              const double ix = (1 - 2 * q) * spec.source_pos[0] -
                                spec.mic_pos[0] + 2.0 * static_cast<double>(mx) * lx;
              const double iy = (1 - 2 * j) * spec.source_pos[1] -
                                spec.mic_pos[1] + 2.0 * static_cast<double>(my) * ly;
              const double iz = (1 - 2 * k) * spec.source_pos[2] -
                                spec.mic_pos[2] + 2.0 * static_cast<double>(mz) * lz;
              const double dist = std::sqrt(ix * ix + iy * iy + iz * iz);
              if (dist >= max_dist) continue;
              const double refl = std::pow(beta, order);
              const double amp = refl / (4.0 * std::numbers::pi * std::max(dist, 1e-2));
              double t = dist / kSpeedOfSound * fs;
              if (order > 0) t += dither(rng);
              add_arrival(h, std::max(t, 0.0), amp);
            }
          }
        }
      }
    }
  }

  AudioSignal out;
  out.sample_rate = spec.sample_rate;
  out.samples = std::move(h);
  return out;
}

double estimate_t60(const AudioSignal& rir) {
  validate(rir, "estimate_t60");
  const auto& h = rir.samples;
  if (h.size() < 8) throw DataError("estimate_t60: RIR too short");
  const double total = energy(rir);
  if (total <= 0.0) throw DataError("estimate_t60: silent RIR");

  // Schroeder backward integration, in dB relative to the full energy.
  std::vector<double> edc(h.size());
  double acc = 0.0;
  for (std::size_t i = h.size(); i-- > 0;) {
    acc += h[i] * h[i];
    edc[i] = 10.0 * std::log10(acc / total + 1e-300);
  }

  std::size_t i5 = h.size(), i35 = h.size();
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i5 == h.size() && edc[i] <= -5.0) i5 = i;
    if (edc[i] <= -35.0) {
      i35 = i;
      break;
    }
  }
  if (i5 >= h.size() || i35 >= h.size() || i35 <= i5 + 1)
    throw NumericalError("estimate_t60: decay range not reached");

  // Least-squares line through the EDC between -5 and -35 dB.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(i35 - i5 + 1);
  for (std::size_t i = i5; i <= i35; ++i) {
    const double x = static_cast<double>(i);
    sx += x;
    sy += edc[i];
    sxx += x * x;
    sxy += x * edc[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);  // dB/sample
  if (!(slope < 0.0)) throw NumericalError("estimate_t60: non-decaying EDC");
  return -60.0 / slope / rir.sample_rate;
}

double estimate_drr(const AudioSignal& rir, double direct_window_ms) {
  validate(rir, "estimate_drr");
  const auto& h = rir.samples;
  const double total = energy(rir);
  if (total <= 0.0) throw DataError("estimate_drr: silent RIR");

  std::size_t peak = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] * h[i] > best) {
      best = h[i] * h[i];
      peak = i;
    }
  const auto win = static_cast<std::size_t>(
      std::lround(direct_window_ms * 1e-3 * rir.sample_rate));
  const std::size_t lo = peak > win ? peak - win : 0;
  const std::size_t hi = std::min(peak + win, h.size() - 1);
  double direct = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) direct += h[i] * h[i];
  const double rest = total - direct;
  if (rest <= total * 1e-15)
    return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(direct / rest);
}

AudioSignal equalize_energy(const AudioSignal& rir, double target_db) {
  validate(rir, "equalize_energy");
  const double e = energy(rir);
  if (e <= 0.0) throw DataError("equalize_energy: zero-energy RIR");
  const double gain = std::pow(10.0, target_db / 20.0) / std::sqrt(e);
  AudioSignal out = rir;
  for (double& v : out.samples) v *= gain;
  return out;
}

AudioSignal direct_path_rir(const AudioSignal& rir, double window_ms) {
  validate(rir, "direct_path_rir");
  const auto& h = rir.samples;
  if (energy(rir) <= 0.0) throw DataError("direct_path_rir: silent RIR");
  std::size_t peak = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] * h[i] > best) {
      best = h[i] * h[i];
      peak = i;
    }
  const auto win = static_cast<std::size_t>(
      std::lround(window_ms * 1e-3 * rir.sample_rate));
  AudioSignal out;
  out.sample_rate = rir.sample_rate;
  out.samples.assign(h.size(), 0.0);
  const std::size_t lo = peak > win ? peak - win : 0;
  const std::size_t hi = std::min(peak + win, h.size() - 1);
  for (std::size_t i = lo; i <= hi; ++i) out.samples[i] = h[i];
  return out;
}

AudioSignal direct_path_signal(const AudioSignal& x, const AudioSignal& rir,
                               double window_ms) {
  return convolve(x, direct_path_rir(rir, window_ms));
}

RirMetrics measure_rir(const AudioSignal& rir) {
  RirMetrics m;
  m.t60_s = estimate_t60(rir);
  m.drr_db = estimate_drr(rir);
  m.total_energy_db = 10.0 * std::log10(energy(rir));
  return m;
}

}  // namespace ara
