// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <cmath>
#include <random>

#include "ara/absorb.hpp"
#include "ara/synth.hpp"

using namespace ara;

TEST_CASE("emphasis factor endpoints and frozen midpoint") {
  CHECK(emphasis_factor(1.0) == doctest::Approx(1.0));
  CHECK(emphasis_factor(0.0) == 0.0);
  // 0.5^(1.2-0.5) = 0.5^0.7
  CHECK(emphasis_factor(0.5) == doctest::Approx(std::pow(0.5, 0.7)).epsilon(1e-12));
  CHECK(emphasis_factor(0.5) == doctest::Approx(0.61557).epsilon(1e-4));
  CHECK_THROWS_AS(emphasis_factor(-0.1), DataError);
  CHECK_THROWS_AS(emphasis_factor(1.1), DataError);
}

TEST_CASE("max absorption update is the stated convex combination") {
  CHECK(update_max_absorption(0.3, 0.9, 1.0) == doctest::Approx(0.9));
  CHECK(update_max_absorption(0.3, 0.9, 0.0) == doctest::Approx(0.3));
  CHECK(update_max_absorption(0.5, 0.8, 0.7) == doctest::Approx(0.71).epsilon(1e-12));
}

TEST_CASE("masked branch at d = 0 returns exactly the minimum shift") {
  AbsorptionParams p;
  AbsorptionState st;
  st.max_absorption = 0.8;
  CHECK(absorption_gain(0.0, 0.2, st, p) == doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("speech branch at its inflection returns half the maximum gain") {
  AbsorptionParams p;
  AbsorptionState st;
  st.max_absorption = 0.4;
  CHECK(absorption_gain(0.5, 0.9, st, p) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("masked branch at d = 1 approaches the group maximum") {
  AbsorptionParams p;
  AbsorptionState st;
  st.max_absorption = 0.8;
  // F(1) * (0.8 - 0.05) / (1 + e^{-17*1.2}) + 0.05
  const double want = 0.75 / (1.0 + std::exp(-20.4)) + 0.05;
  CHECK(absorption_gain(1.0, 0.2, st, p) == doctest::Approx(want).epsilon(1e-12));
  CHECK(absorption_gain(1.0, 0.2, st, p) == doctest::Approx(0.8).epsilon(1e-7));
}

TEST_CASE("both branches are monotone in d for default parameters") {
  AbsorptionParams p;
  AbsorptionState st;
  st.max_absorption = 0.8;
  double prev_masked = -1.0, prev_speech = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double d = static_cast<double>(i) / 1000.0;
    const double masked = absorption_gain(d, 0.0, st, p);
    const double speech = absorption_gain(d, 1.0, st, p);
    CHECK(masked >= prev_masked - 1e-15);
    CHECK(speech >= prev_speech - 1e-15);
    CHECK(masked >= 0.0);
    CHECK(speech >= 0.0);
    CHECK(masked >= p.min_shift - 1e-12);
    CHECK(masked <= std::max(st.max_absorption, p.min_shift) + 1e-9);
    CHECK(speech < p.speech_max_gain);
    prev_masked = masked;
    prev_speech = speech;
  }
}

TEST_CASE("frame distance shares the delta contract") {
  std::vector<double> a{3.0, 0.0}, b{0.0, 4.0};
  CHECK(frame_distance(a, b) == doctest::Approx(5.0 / 7.0).epsilon(1e-12));
  CHECK(frame_distance(a, a) == 0.0);
}

TEST_CASE("L(m) stays within [0, 1] under repeated updates") {
  double l = 0.4;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    l = update_max_absorption(l, uni(rng), 0.7);
    CHECK(l >= 0.0);
    CHECK(l <= 1.0);
  }
}

namespace {

ProcessConfig quick_config(std::uint64_t seed) {
  ProcessConfig cfg;
  cfg.seed = seed;
  // Lighter INS settings keep the unit suite fast; the defaults get their
  // workout in the acceptance run.
  cfg.group_ins.n_surrogates = 12;
  cfg.group_ins.scales = InsConfig::default_scales(4, 0.03, 0.45);
  cfg.frame_ins.n_surrogates = 8;
  return cfg;
}

}  // namespace

TEST_CASE("process maps silence to silence and preserves length") {
  AudioSignal z;
  z.sample_rate = 16000;
  z.samples.assign(8000, 0.0);
  const auto out = process(z, quick_config(1));
  CHECK(out.size() == z.size());
  CHECK(peak_abs(out) == 0.0);
}

TEST_CASE("process attenuates pure stationary noise") {
  const auto noise = synth::white_noise(12000, 16000, 17, 0.2);
  const auto out = process(noise, quick_config(2));
  CHECK(out.size() == noise.size());
  CHECK(energy(out) < energy(noise));
}

TEST_CASE("process is deterministic given the seed") {
  const auto x = synth::speech_like(0.75, 16000, 33);
  std::vector<FrameDiagnostic> diag_a, diag_b;
  const auto a = process(x, quick_config(5), &diag_a);
  const auto b = process(x, quick_config(5), &diag_b);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a.samples[i] == b.samples[i]);
  REQUIRE(diag_a.size() == diag_b.size());
  for (std::size_t i = 0; i < diag_a.size(); ++i) {
    REQUIRE(diag_a[i].gain == diag_b[i].gain);
    REQUIRE(diag_a[i].distance == diag_b[i].distance);
  }
}

TEST_CASE("process emits one diagnostic per frame with gains in range") {
  const auto x = synth::speech_like(0.75, 16000, 44);
  std::vector<FrameDiagnostic> diag;
  std::vector<ReverbGroup> groups;
  const auto out = process(x, quick_config(6), &diag, &groups);
  CHECK(out.size() == x.size());
  CHECK(!groups.empty());
  REQUIRE(!diag.empty());
  for (const auto& fd : diag) {
    CHECK(fd.gain >= 0.0);
    CHECK(fd.gain < 1.2 + 1e-9);
    CHECK(fd.distance >= 0.0);
    CHECK(fd.distance <= 1.0);
    CHECK(fd.delta_ins >= 0.0);
    CHECK(fd.delta_ins <= 1.0);
  }
  CHECK(diag[0].distance == 1.0);  // first frame has no predecessor
  for (const auto& g : groups) {
    CHECK(g.delta_ins >= 0.0);
    CHECK(g.delta_ins <= 1.0);
  }
  CHECK(groups[0].delta_ins == 1.0);
}

TEST_CASE("median theta mode classifies half the groups as masked") {
  const auto x = synth::speech_like(1.0, 16000, 55);
  auto cfg = quick_config(7);
  cfg.detect.theta_from_median = true;
  std::vector<ReverbGroup> groups;
  process(x, cfg, nullptr, &groups);
  std::size_t masked = 0;
  for (const auto& g : groups) masked += g.masked ? 1 : 0;
  CHECK(masked >= groups.size() / 4);
  CHECK(masked <= 3 * groups.size() / 4 + 1);
}
