// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ara/absorb.hpp"

#include <cmath>

namespace ara {
namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t i) {
  // splitmix64 over (seed, tag, index) gives independent per-item streams.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (tag * 0x100000001ULL + i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

void AbsorptionParams::validate() const {
  if (!(min_shift > 0.0)) throw DataError("AbsorptionParams: min_shift must be > 0");
  if (!(speech_max_gain > 0.0))
    throw DataError("AbsorptionParams: speech_max_gain must be > 0");
  if (group_importance < 0.0 || group_importance > 1.0)
    throw DataError("AbsorptionParams: group_importance must be in [0, 1]");
  if (!(masked_growth > 0.0) || !(speech_growth > 0.0))
    throw DataError("AbsorptionParams: growth rates must be > 0");
}

double frame_distance(std::span<const double> v_curr,
                      std::span<const double> v_prev) {
  return delta_ins(v_curr, v_prev);
}

double emphasis_factor(double d) {
  if (d < 0.0 || d > 1.0) throw DataError("emphasis_factor: d outside [0, 1]");
  if (d == 0.0) return 0.0;
  return std::pow(d, 1.2 - d);
}

double update_max_absorption(double l_prev, double delta, double p) {
  return p * delta + (1.0 - p) * l_prev;
}

double absorption_gain(double d, double delta_ins_value,
                       const AbsorptionState& state,
                       const AbsorptionParams& params) {
  if (d < 0.0 || d > 1.0) throw DataError("absorption_gain: d outside [0, 1]");
  if (delta_ins_value <= params.theta_ins) {
    const double f = emphasis_factor(d);
    const double s = sigmoid(params.masked_growth * (d - params.masked_inflection));
    return f * (state.max_absorption - params.min_shift) * s + params.min_shift;
  }
  return params.speech_max_gain /
         (1.0 + std::exp(-params.speech_growth * (d - params.speech_inflection)));
}

AudioSignal process(const AudioSignal& signal, const ProcessConfig& cfg,
                    std::vector<FrameDiagnostic>* diagnostics,
                    std::vector<ReverbGroup>* groups_out) {
  validate(signal, "process");
  cfg.params.validate();
  cfg.detect.validate();
  if (signal.empty()) throw DataError("process: empty signal");

  const FrameSequence frames =
      frame_signal(signal, cfg.frame_ms, cfg.frame_overlap, WindowKind::Hann);
  const auto spans = segment_groups(frames, cfg.detect);

  // Group-level non-stationarity vectors and their variation.
  std::vector<ReverbGroup> groups(spans.size());
  for (std::size_t m = 0; m < spans.size(); ++m) {
    groups[m].span = spans[m];
    groups[m].start_time_s = frames.frame_start_s(spans[m].first_frame);
    const AudioSignal seg = extract_group_span(frames, spans[m]);
    InsConfig gcfg = cfg.group_ins;
    gcfg.rng_seed = mix_seed(cfg.seed, 0xA1, m);
    groups[m].ins_vector = group_ins_vector(seg, gcfg);
  }
  for (std::size_t m = 0; m < groups.size(); ++m) {
    groups[m].delta_ins =
        m == 0 ? 1.0  // first group: maximally novel, never absorbed as masking
               : delta_ins(groups[m].ins_vector, groups[m - 1].ins_vector);
  }

  double theta = cfg.detect.theta_ins;
  if (cfg.detect.theta_from_median) {
    std::vector<double> deltas(groups.size());
    for (std::size_t m = 0; m < groups.size(); ++m) deltas[m] = groups[m].delta_ins;
    theta = median_threshold(deltas);
  }

  // Recursive maximum absorption over groups, seeded at the decision
  // threshold as a neutral prior.
  std::vector<double> group_l(groups.size());
  double l_state = theta;
  for (std::size_t m = 0; m < groups.size(); ++m) {
    l_state = update_max_absorption(l_state, groups[m].delta_ins,
                                    cfg.params.group_importance);
    group_l[m] = l_state;
    groups[m].masked = groups[m].delta_ins <= theta;
  }

  AbsorptionParams params = cfg.params;
  params.theta_ins = theta;

  // Per-frame gains from the short-time INS distance.
  std::vector<double> gains(frames.n_frames, 0.0);
  if (diagnostics) diagnostics->clear();
  std::vector<double> prev_ins;
  for (std::size_t l = 0; l < frames.n_frames; ++l) {
    auto fr = frames.frame(l);
    AudioSignal frame_sig;
    frame_sig.sample_rate = frames.sample_rate;
    frame_sig.samples.assign(fr.begin(), fr.end());
    InsConfig fcfg = cfg.frame_ins;
    fcfg.rng_seed = mix_seed(cfg.seed, 0xB2, l);
    const std::vector<double> v = ins_profile(frame_sig, fcfg).ins;

    const double d = l == 0 ? 1.0 : frame_distance(v, prev_ins);
    prev_ins = v;

    const std::size_t m = owning_group(l, spans);
    AbsorptionState state;
    state.max_absorption = group_l[m];
    const double gain = absorption_gain(d, groups[m].delta_ins, state, params);
    gains[l] = gain;

    if (diagnostics) {
      FrameDiagnostic fd;
      fd.frame = l;
      fd.time_s = frames.frame_start_s(l);
      fd.distance = d;
      fd.delta_ins = groups[m].delta_ins;
      fd.masked = groups[m].masked;
      fd.gain = gain;
      diagnostics->push_back(fd);
    }
  }

  AudioSignal out = overlap_add(frames, gains);
  if (cfg.peak_normalize) {
    const double peak = peak_abs(out);
    if (peak > 1.0)
      for (double& v : out.samples) v /= peak;
  }
  if (groups_out) *groups_out = std::move(groups);
  return out;
}

}  // namespace ara
