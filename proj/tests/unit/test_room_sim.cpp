// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <cmath>
#include <random>

#include "ara/room_sim.hpp"
#include "ara/signal_ops.hpp"
#include "ara/synth.hpp"

using namespace ara;

TEST_CASE("order-0 ISM is a single direct-path arrival") {
  RoomSpec spec;
  spec.dimensions = {6.0, 5.0, 3.0};
  spec.source_pos = {1.0, 1.0, 1.0};
  // 100 samples of travel at 16 kHz: r = 100 * 343 / 16000 = 2.14375 m.
  spec.mic_pos = {1.0 + 2.14375, 1.0, 1.0};
  spec.target_t60 = 0.4;
  spec.max_order = 0;
  const auto rir = ism_rir(spec, 1);

  const double want_amp = 1.0 / (4.0 * 3.14159265358979 * 2.14375);
  CHECK(rir.samples[100] == doctest::Approx(want_amp).epsilon(1e-6));
  CHECK(std::abs(rir.samples[99]) < 1e-9);
  CHECK(std::abs(rir.samples[101]) < 1e-9);
  // Integer delay puts everything in one tap.
  CHECK(energy(rir) == doctest::Approx(want_amp * want_amp).epsilon(1e-9));
}

TEST_CASE("ism_rir validates geometry") {
  RoomSpec spec;
  spec.source_pos = {9.0, 1.0, 1.0};  // outside the 7 m room
  CHECK_THROWS_AS(ism_rir(spec, 0), DataError);
  spec = RoomSpec{};
  spec.target_t60 = -1.0;
  CHECK_THROWS_AS(ism_rir(spec, 0), DataError);
}

TEST_CASE("ism_rir is deterministic per seed") {
  RoomSpec spec;
  spec.target_t60 = 0.3;
  const auto a = ism_rir(spec, 77);
  const auto b = ism_rir(spec, 77);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a.samples[i] == b.samples[i]);
  const auto c = ism_rir(spec, 78);
  bool differs = false;
  for (std::size_t i = 0; i < a.size() && !differs; ++i)
    differs = a.samples[i] != c.samples[i];
  CHECK(differs);
}

TEST_CASE("estimate_t60 recovers a closed-form exponential decay") {
  // h(t) = exp(-6.91 t / T) has an energy decay of exactly 60 dB per T.
  const int fs = 16000;
  const double T = 0.4;
  AudioSignal h;
  h.sample_rate = fs;
  h.samples.resize(static_cast<std::size_t>(0.6 * fs));
  for (std::size_t i = 0; i < h.size(); ++i)
    h.samples[i] = std::exp(-6.91 * static_cast<double>(i) / fs / T);
  CHECK(estimate_t60(h) == doctest::Approx(T).epsilon(0.02));
}

TEST_CASE("estimate_t60 handles noise-modulated decay within 10%") {
  const int fs = 16000;
  const double T = 0.5;
  auto h = synth::white_noise(static_cast<std::size_t>(0.8 * fs), fs, 5, 1.0);
  for (std::size_t i = 0; i < h.size(); ++i)
    h.samples[i] *= std::exp(-6.91 * static_cast<double>(i) / fs / T);
  CHECK(estimate_t60(h) == doctest::Approx(T).epsilon(0.10));
}

TEST_CASE("estimate_t60 rejects an impulse (decay range not reached)") {
  AudioSignal h;
  h.sample_rate = 16000;
  h.samples.assign(1000, 0.0);
  h.samples[3] = 1.0;
  CHECK_THROWS_AS(estimate_t60(h), NumericalError);
}

TEST_CASE("paper room at T60 = 1.0 s lands within 15%") {
  RoomSpec spec;  // 7.0 x 5.2 x 3.0, T60 1.0, defaults
  const auto rir = ism_rir(spec, 42);
  const double t60 = estimate_t60(rir);
  CHECK(t60 > 0.85);
  CHECK(t60 < 1.15);
}

TEST_CASE("higher absorption shortens the estimated decay and drains energy") {
  RoomSpec fast;
  fast.target_t60 = 0.3;
  RoomSpec slow;
  slow.target_t60 = 1.0;
  const auto h_fast = ism_rir(fast, 7);
  const auto h_slow = ism_rir(slow, 7);
  CHECK(estimate_t60(h_fast) < estimate_t60(h_slow));
  const double e_fast = energy(h_fast), e_slow = energy(h_slow);
  CHECK(e_fast < e_slow);
}

TEST_CASE("estimate_drr sentinels and frozen equal-energy case") {
  AudioSignal h;
  h.sample_rate = 16000;
  h.samples.assign(2000, 0.0);
  h.samples[10] = 1.0;
  CHECK(std::isinf(estimate_drr(h)));

  h.samples[1500] = 1.0;  // equal-energy tail outside the direct window
  CHECK(estimate_drr(h) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("DRR falls with distance") {
  RoomSpec near;
  near.dimensions = {10.0, 8.0, 4.0};
  near.source_pos = {2.0, 4.0, 1.5};
  near.mic_pos = {3.0, 4.0, 1.5};
  near.target_t60 = 0.8;
  RoomSpec far = near;
  far.mic_pos = {9.0, 6.5, 2.5};
  CHECK(estimate_drr(ism_rir(near, 3)) > estimate_drr(ism_rir(far, 3)));
}

TEST_CASE("equalize_energy hits the target and is idempotent") {
  auto h = synth::white_noise(4000, 16000, 9, 0.1);
  const auto eq = equalize_energy(h, 17.9);
  CHECK(10.0 * std::log10(energy(eq)) == doctest::Approx(17.9).epsilon(1e-9));
  const auto eq2 = equalize_energy(equalize_energy(eq, 3.0), 17.9);
  for (std::size_t i = 0; i < eq.size(); ++i)
    CHECK(eq2.samples[i] == doctest::Approx(eq.samples[i]).epsilon(1e-9));

  AudioSignal z;
  z.sample_rate = 16000;
  z.samples.assign(100, 0.0);
  CHECK_THROWS_AS(equalize_energy(z, 0.0), DataError);
}

TEST_CASE("direct path through an impulse RIR reproduces the input") {
  const auto x = synth::speech_like(0.25, 16000, 11);
  AudioSignal h;
  h.sample_rate = 16000;
  h.samples.assign(50, 0.0);
  h.samples[20] = 0.5;
  const auto sdir = direct_path_signal(x, h);
  REQUIRE(sdir.size() == x.size() + h.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(sdir.samples[i + 20] == doctest::Approx(0.5 * x.samples[i]).epsilon(1e-12));
}

TEST_CASE("distortion is exactly the late and noise residue") {
  const auto x = synth::speech_like(0.25, 16000, 12);
  RoomSpec spec;
  spec.target_t60 = 0.3;
  const auto h = ism_rir(spec, 13);
  const auto h_dir = direct_path_rir(h);
  AudioSignal h_late = h;
  for (std::size_t i = 0; i < h.size(); ++i) h_late.samples[i] -= h_dir.samples[i];

  const auto s_full = convolve(x, h);
  const auto s_dir = convolve(x, h_dir);
  const auto s_late = convolve(x, h_late);
  for (std::size_t i = 0; i < s_full.size(); ++i)
    CHECK(s_full.samples[i] - s_dir.samples[i] ==
          doctest::Approx(s_late.samples[i]).epsilon(1e-9));
}

TEST_CASE("direct-path energy stays below the full reverberant energy") {
  const auto x = synth::speech_like(0.25, 16000, 14);
  RoomSpec spec;
  spec.target_t60 = 0.5;
  const auto h = equalize_energy(ism_rir(spec, 15), 17.9);
  const auto s_full = convolve(x, h);
  const auto s_dir = direct_path_signal(x, h);
  CHECK(energy(s_dir) < energy(s_full));
}
