// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ara/ins.hpp"

#include <algorithm>
#include <boost/math/distributions/gamma.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>

#include "ara/fft.hpp"

namespace ara {
namespace {

// Orthonormal Hermite functions sampled on [-6, 6]; the classic taper
// family for time-frequency stationarity testing. Rows are unit norm.
const std::vector<double>& hermite_tapers(std::size_t window_len, int n_tapers) {
  static std::map<std::pair<std::size_t, int>, std::vector<double>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(window_len, n_tapers);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const double t_max = 6.0;
  std::vector<double> t(window_len);
  for (std::size_t i = 0; i < window_len; ++i)
    t[i] = -t_max + 2.0 * t_max * static_cast<double>(i) /
                        static_cast<double>(window_len - 1);

  std::vector<double> h(static_cast<std::size_t>(n_tapers) * window_len);
  auto row = [&](int k) { return h.data() + static_cast<std::size_t>(k) * window_len; };
  for (std::size_t i = 0; i < window_len; ++i) {
    const double g = std::exp(-0.5 * t[i] * t[i]);
    row(0)[i] = g;
    if (n_tapers > 1) row(1)[i] = std::numbers::sqrt2 * t[i] * g;
  }
  for (int k = 2; k < n_tapers; ++k) {
    const double a = std::sqrt(2.0 / k), b = std::sqrt((k - 1.0) / k);
    for (std::size_t i = 0; i < window_len; ++i)
      row(k)[i] = a * t[i] * row(k - 1)[i] - b * row(k - 2)[i];
  }
  // Gram-Schmidt against lower orders fixes the small discretization
  // leakage, then normalize to unit energy.
  for (int k = 0; k < n_tapers; ++k) {
    for (int j = 0; j < k; ++j) {
      double dot = 0.0;
      for (std::size_t i = 0; i < window_len; ++i) dot += row(k)[i] * row(j)[i];
      for (std::size_t i = 0; i < window_len; ++i) row(k)[i] -= dot * row(j)[i];
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < window_len; ++i) norm += row(k)[i] * row(k)[i];
    norm = std::sqrt(norm);
    if (norm > 0.0)
      for (std::size_t i = 0; i < window_len; ++i) row(k)[i] /= norm;
  }
  return cache.emplace(key, std::move(h)).first->second;
}

struct Dispersion {
  double theta = 0.0;      // variance of position distances
  double mean_dist = 0.0;  // mean position distance
};

// Distance of each local spectrum to the global average spectrum:
// symmetrized KL on unit-normalized spectra plus an energy log-deviation
// term. Theta is the sample variance of those distances over positions.
Dispersion spectral_dispersion(const TimeFrequencyRepr& tfr) {
  const std::size_t np = tfr.n_positions, nb = tfr.n_bins;
  std::vector<double> avg(nb, 0.0);
  double grand_total = 0.0;
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t b = 0; b < nb; ++b) {
      avg[b] += tfr.at(p, b);
      grand_total += tfr.at(p, b);
    }
  for (double& v : avg) v /= static_cast<double>(np);

  // Floor relative to the grand mean power keeps the statistic invariant
  // under amplitude scaling while avoiding log(0) at silent positions.
  const double eps = 1e-12 * (grand_total / static_cast<double>(np * nb)) + 1e-300;
  const double mean_energy = grand_total / static_cast<double>(np);
  double avg_energy = 0.0;
  for (double v : avg) avg_energy += v;

  std::vector<double> q(nb);
  for (std::size_t b = 0; b < nb; ++b)
    q[b] = (avg[b] + eps) / (avg_energy + static_cast<double>(nb) * eps);

  std::vector<double> dist(np);
  for (std::size_t p = 0; p < np; ++p) {
    auto s = tfr.row(p);
    double e = 0.0;
    for (double v : s) e += v;
    double kl = 0.0;
    const double denom = e + static_cast<double>(nb) * eps;
    for (std::size_t b = 0; b < nb; ++b) {
      const double pi = (s[b] + eps) / denom;
      kl += (pi - q[b]) * std::log(pi / q[b]);
    }
    const double log_energy = std::abs(std::log((e + eps) / (mean_energy + eps)));
    dist[p] = kl + log_energy;
  }

  Dispersion d;
  for (double v : dist) d.mean_dist += v;
  d.mean_dist /= static_cast<double>(np);
  double var = 0.0;
  for (double v : dist) var += (v - d.mean_dist) * (v - d.mean_dist);
  d.theta = np > 1 ? var / static_cast<double>(np - 1) : 0.0;
  return d;
}

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

std::size_t window_for_scale(double scale, std::size_t n) {
  auto w = static_cast<std::size_t>(std::lround(scale * static_cast<double>(n)));
  return std::max<std::size_t>(w, 8);
}

}  // namespace

std::vector<double> InsConfig::default_scales(int n, double lo, double hi) {
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i)
    s[i] = n == 1 ? lo
                  : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return s;
}

InsConfig InsConfig::fast_frame_mode(std::uint64_t seed) {
  InsConfig cfg;
  cfg.n_surrogates = 20;
  cfg.scales = default_scales(4, 64.0 / 512.0, 256.0 / 512.0);
  cfg.rng_seed = seed;
  return cfg;
}

void InsConfig::validate() const {
  if (n_surrogates < 2) throw DataError("InsConfig: need >= 2 surrogates");
  if (n_tapers < 1) throw DataError("InsConfig: need >= 1 taper");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw DataError("InsConfig: confidence must be in (0, 1)");
  if (scales.empty()) throw DataError("InsConfig: empty scale list");
  for (double s : scales)
    if (!(s > 0.0 && s < 1.0)) throw DataError("InsConfig: scales must be in (0, 1)");
}

double InsProfile::max_ins() const {
  double m = 0.0;
  for (double v : ins) m = std::max(m, v);
  return m;
}

std::vector<AudioSignal> make_surrogates(const AudioSignal& signal,
                                         const InsConfig& cfg) {
  validate(signal, "make_surrogates");
  const std::size_t n = signal.size();
  if (n < 16) throw DataError("make_surrogates: signal too short (< 16)");
  if (peak_abs(signal) == 0.0)
    throw DataError("make_surrogates: all-zero input");

  const auto spectrum = fft::rfft(signal.samples);
  const std::size_t n_bins = spectrum.size();
  // Bins 1 .. (ceil(n/2) - 1) get fresh phases; DC (and Nyquist for even n)
  // stay untouched so the surrogate remains real with the same magnitudes.
  const std::size_t first = 1;
  const std::size_t last = (n % 2 == 0) ? n_bins - 1 : n_bins;

  std::vector<AudioSignal> out;
  out.reserve(static_cast<std::size_t>(cfg.n_surrogates));
  for (int j = 0; j < cfg.n_surrogates; ++j) {
    auto rng = seeded_engine(cfg.rng_seed, static_cast<std::uint64_t>(j) + 1);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::vector<std::complex<double>> sp(n_bins);
    sp[0] = spectrum[0];
    if (n % 2 == 0) sp[n_bins - 1] = spectrum[n_bins - 1];
    for (std::size_t k = first; k < last; ++k)
      sp[k] = std::polar(std::abs(spectrum[k]), phase(rng));
    AudioSignal s;
    s.sample_rate = signal.sample_rate;
    s.samples = fft::irfft(sp, n);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::size_t> spectrogram_positions(std::size_t signal_len,
                                               std::size_t window_len) {
  std::vector<std::size_t> pos;
  if (window_len == 0 || window_len > signal_len) return pos;
  const std::size_t hop = std::max<std::size_t>(window_len / 2, 1);
  for (std::size_t p = 0; p + window_len <= signal_len; p += hop)
    pos.push_back(p);
  return pos;
}

TimeFrequencyRepr multitaper_spectrogram(std::span<const double> x,
                                         std::size_t window_len, int n_tapers,
                                         std::span<const std::size_t> positions) {
  if (window_len > x.size())
    throw DataError("multitaper_spectrogram: window exceeds signal");
  if (n_tapers < 1) throw DataError("multitaper_spectrogram: n_tapers < 1");

  const auto& tapers = hermite_tapers(window_len, n_tapers);
  const std::size_t nb = window_len / 2 + 1;
  TimeFrequencyRepr tfr;
  tfr.n_positions = positions.size();
  tfr.n_bins = nb;
  tfr.power.assign(tfr.n_positions * nb, 0.0);

  std::vector<double> buf(window_len);
  const double taper_scale = 1.0 / static_cast<double>(n_tapers);
  for (std::size_t p = 0; p < positions.size(); ++p) {
    for (int k = 0; k < n_tapers; ++k) {
      const double* taper = tapers.data() + static_cast<std::size_t>(k) * window_len;
      for (std::size_t i = 0; i < window_len; ++i)
        buf[i] = x[positions[p] + i] * taper[i];
      auto spec = fft::rfft(buf);
      for (std::size_t b = 0; b < nb; ++b) {
        // One-sided doubling keeps sum-over-bins equal to segment energy.
        const bool interior = b != 0 && !(window_len % 2 == 0 && b == nb - 1);
        const double mult = interior ? 2.0 : 1.0;
        tfr.power[p * nb + b] += taper_scale * mult * std::norm(spec[b]) /
                                 static_cast<double>(window_len);
      }
    }
  }
  return tfr;
}

InsProfile ins_profile(const AudioSignal& signal, const InsConfig& cfg) {
  validate(signal, "ins_profile");
  cfg.validate();
  const std::size_t n = signal.size();
  if (n < 16) throw DataError("ins_profile: signal too short (< 16)");

  InsProfile prof;
  prof.scales = cfg.scales;
  prof.ins.assign(cfg.scales.size(), 0.0);
  prof.gamma.assign(cfg.scales.size(), 1.0);
  prof.is_nonstationary.assign(cfg.scales.size(), false);

  // Silence is stationary by convention.
  if (peak_abs(signal) == 0.0) return prof;

  for (double s : cfg.scales) {
    const std::size_t w = window_for_scale(s, n);
    if (spectrogram_positions(n, w).size() < 2)
      throw NumericalError("ins_profile: scale too large for signal");
  }

  const auto surrogates = make_surrogates(signal, cfg);

  for (std::size_t si = 0; si < cfg.scales.size(); ++si) {
    const std::size_t w = window_for_scale(cfg.scales[si], n);
    const auto positions = spectrogram_positions(n, w);

    const auto d_sig = spectral_dispersion(
        multitaper_spectrogram(signal.samples, w, cfg.n_tapers, positions));

    std::vector<double> theta_s(surrogates.size());
    double mean_dist_s = 0.0;
    for (std::size_t j = 0; j < surrogates.size(); ++j) {
      const auto d = spectral_dispersion(multitaper_spectrogram(
          surrogates[j].samples, w, cfg.n_tapers, positions));
      theta_s[j] = d.theta;
      mean_dist_s += d.mean_dist;
    }
    mean_dist_s /= static_cast<double>(surrogates.size());

    double mean = 0.0;
    for (double v : theta_s) mean += v;
    mean /= static_cast<double>(theta_s.size());
    double var = 0.0;
    for (double v : theta_s) var += (v - mean) * (v - mean);
    var /= static_cast<double>(theta_s.size() - 1);

    // Degenerate dispersion (constant or near-constant segments): variance
    // of distances collapses for surrogates and signal alike -> stationary.
    const double floor = 1e-20 * (mean_dist_s * mean_dist_s + 1e-300);
    if (mean <= floor) {
      if (d_sig.theta <= 1e-20 * (d_sig.mean_dist * d_sig.mean_dist + 1e-300)) {
        prof.ins[si] = 0.0;
        prof.gamma[si] = 1.0;
        prof.is_nonstationary[si] = false;
        continue;
      }
      throw NumericalError("ins_profile: degenerate surrogate population");
    }

    double quantile;
    if (var < 1e-12 * mean * mean) {
      quantile = mean;  // zero-spread limit of the fitted distribution
    } else {
      const double shape = mean * mean / var;
      const double scale = var / mean;
      boost::math::gamma_distribution<double> fit(shape, scale);
      quantile = boost::math::quantile(fit, cfg.confidence);
    }

    prof.ins[si] = std::sqrt(d_sig.theta / mean);
    prof.gamma[si] = std::sqrt(quantile / mean);
    prof.is_nonstationary[si] = prof.ins[si] > prof.gamma[si];
  }
  return prof;
}

}  // namespace ara
