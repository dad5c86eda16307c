// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <cmath>

#include "ara/esii.hpp"
#include "ara/fft.hpp"
#include "ara/ins.hpp"
#include "ara/synth.hpp"

using namespace ara;

TEST_CASE("standard config has 21 bands spanning 160..8000 with unit weight") {
  const auto cfg = EsiiConfig::standard();
  REQUIRE(cfg.band_centers.size() == 21);
  CHECK(cfg.band_centers.front() == doctest::Approx(160.0));
  CHECK(cfg.band_centers.back() == doctest::Approx(8000.0));
  double sum = 0.0;
  for (double w : cfg.band_importance) {
    CHECK(w >= 0.0);
    sum += w;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  cfg.validate(16000);
}

TEST_CASE("extract_distortion basics") {
  auto s = synth::speech_like(0.2, 16000, 1);
  CHECK(peak_abs(extract_distortion(s, s)) == 0.0);

  auto w = synth::white_noise(s.size(), 16000, 2, 0.05);
  AudioSignal noisy = s;
  for (std::size_t i = 0; i < s.size(); ++i) noisy.samples[i] += w.samples[i];
  const auto d = extract_distortion(noisy, s);
  for (std::size_t i = 0; i < s.size(); ++i)
    REQUIRE(d.samples[i] == doctest::Approx(w.samples[i]).epsilon(1e-12));

  AudioSignal shorter = s;
  shorter.samples.pop_back();
  CHECK_THROWS_AS(extract_distortion(noisy, shorter), DataError);
}

TEST_CASE("esii is 1 for zero distortion") {
  const auto ref = synth::speech_like(1.0, 16000, 3);
  AudioSignal zero;
  zero.sample_rate = 16000;
  zero.samples.assign(ref.size(), 0.0);
  CHECK(esii(ref, zero) == doctest::Approx(1.0));
}

TEST_CASE("esii collapses when the distortion sits 30 dB above the speech") {
  // Noise reference avoids silent analysis windows; scaling the same signal
  // by +30 dB shifts every band level by exactly 30 dB.
  const auto ref = synth::white_noise(16000, 16000, 4, 0.1);
  AudioSignal dist = ref;
  const double up = std::pow(10.0, 30.0 / 20.0);
  for (double& v : dist.samples) v *= up;
  CHECK(esii(ref, dist) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("esii equal levels give mid audibility") {
  const auto ref = synth::white_noise(16000, 16000, 5, 0.1);
  CHECK(esii(ref, ref) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("esii decreases monotonically with distortion gain") {
  const auto ref = synth::speech_like(1.5, 16000, 6);
  const auto noise = speech_shaped_noise(ref, ref.size(), 7);
  double prev = 2.0;
  for (double gain : {0.0625, 0.25, 1.0, 4.0, 16.0}) {
    AudioSignal d;
    d.sample_rate = 16000;
    d.samples.resize(ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i)
      d.samples[i] = gain * noise.samples[i];
    const double score = esii(ref, d);
    CHECK(score >= 0.0);
    CHECK(score <= 1.0);
    CHECK(score <= prev + 1e-12);
    prev = score;
  }
  // And the mid-gain score is strictly between the extremes.
  AudioSignal mid = noise;
  const double mid_score = esii(ref, mid);
  CHECK(mid_score > 0.0);
  CHECK(mid_score < 1.0);
}

TEST_CASE("normalized_esii ratio, clamp and errors") {
  CHECK(normalized_esii(0.6, 0.6) == doctest::Approx(1.0));
  CHECK(normalized_esii(0.3, 0.6) == doctest::Approx(0.5));
  CHECK(normalized_esii(3.0, 0.6) == doctest::Approx(1.5));  // clamped
  CHECK_THROWS_AS(normalized_esii(0.5, 0.0), DataError);
}

TEST_CASE("delta_score is the scaled difference and anti-symmetric") {
  CHECK(delta_score(0.636, 0.5) == doctest::Approx(13.6));
  CHECK(delta_score(0.5, 0.5) == 0.0);
  CHECK(delta_score(0.3, 0.7) == doctest::Approx(-delta_score(0.7, 0.3)));
}

TEST_CASE("speech shaped noise matches the reference band spectrum within 3 dB") {
  const auto ref = synth::speech_like(3.0, 16000, 8);
  const auto ssn = speech_shaped_noise(ref, 4 * 16000, 9);
  REQUIRE(ssn.size() == static_cast<std::size_t>(4 * 16000));

  // Long-term band levels via Welch periodogram, same bands as the score.
  const auto cfg = EsiiConfig::standard();
  auto band_levels = [&](const AudioSignal& s) {
    const std::size_t w = 2048;
    std::vector<double> acc(w / 2 + 1, 0.0);
    std::size_t count = 0;
    std::vector<double> buf(w);
    for (std::size_t start = 0; start + w <= s.size(); start += w / 2) {
      for (std::size_t i = 0; i < w; ++i)
        buf[i] = s.samples[start + i] *
                 (0.5 - 0.5 * std::cos(2.0 * 3.14159265358979 *
                                       static_cast<double>(i) / w));
      const auto spec = fft::rfft(buf);
      for (std::size_t b = 0; b < acc.size(); ++b) acc[b] += std::norm(spec[b]);
      ++count;
    }
    const double bin_hz = 16000.0 / w;
    std::vector<double> lv(cfg.band_centers.size(), 0.0);
    for (std::size_t k = 0; k < cfg.band_centers.size(); ++k) {
      const double lo = cfg.band_centers[k] / std::pow(2.0, 1.0 / 8.0);
      const double hi = cfg.band_centers[k] * std::pow(2.0, 1.0 / 8.0);
      double p = 0.0;
      for (std::size_t b = 0; b < acc.size(); ++b) {
        const double f = static_cast<double>(b) * bin_hz;
        if (f >= lo && f < hi) p += acc[b];
      }
      lv[k] = 10.0 * std::log10(p / count + 1e-300);
    }
    return lv;
  };

  const auto lr = band_levels(ref);
  const auto ln = band_levels(ssn);
  // Compare shapes with the overall level aligned (the generator matches
  // RMS, not per-band absolute level).
  double mean_diff = 0.0;
  for (std::size_t k = 0; k < lr.size(); ++k) mean_diff += lr[k] - ln[k];
  mean_diff /= static_cast<double>(lr.size());
  for (std::size_t k = 0; k < lr.size(); ++k)
    CHECK(std::abs(lr[k] - ln[k] - mean_diff) < 3.0);
}

TEST_CASE("speech shaped noise is stationary and deterministic") {
  const auto ref = synth::speech_like(2.0, 16000, 10);
  const auto a = speech_shaped_noise(ref, 32000, 11);
  const auto b = speech_shaped_noise(ref, 32000, 11);
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a.samples[i] == b.samples[i]);

  InsConfig cfg;
  cfg.n_surrogates = 20;
  cfg.scales = InsConfig::default_scales(7, 0.02, 0.45);
  cfg.rng_seed = 12;
  const auto prof = ins_profile(a, cfg);
  std::size_t stationary = 0;
  for (bool f : prof.is_nonstationary) stationary += f ? 0 : 1;
  CHECK(static_cast<double>(stationary) >=
        0.85 * static_cast<double>(prof.n_scales()) - 1e-9);
}
