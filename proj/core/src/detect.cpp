// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ara/detect.hpp"

#include <algorithm>
#include <cmath>

namespace ara {

void DetectConfig::validate() const {
  if (n_frames_per_group < 1)
    throw DataError("DetectConfig: n_frames_per_group must be >= 1");
  if (group_overlap_frac < 0.0 || group_overlap_frac >= 1.0)
    throw DataError("DetectConfig: group_overlap_frac must be in [0, 1)");
  if (!theta_from_median && (theta_ins < 0.0 || theta_ins > 1.0))
    throw DataError("DetectConfig: theta_ins must be in [0, 1]");
}

std::size_t DetectConfig::group_hop() const {
  const auto hop = static_cast<std::size_t>(
      std::lround(n_frames_per_group * (1.0 - group_overlap_frac)));
  return std::max<std::size_t>(hop, 1);
}

std::vector<GroupSpan> segment_groups(const FrameSequence& frames,
                                      const DetectConfig& cfg) {
  cfg.validate();
  if (frames.n_frames == 0) throw DataError("segment_groups: no frames");
  const std::size_t n = static_cast<std::size_t>(cfg.n_frames_per_group);
  const std::size_t hop = cfg.group_hop();

  std::vector<GroupSpan> groups;
  std::size_t start = 0;
  for (;;) {
    GroupSpan g;
    g.index = groups.size();
    g.first_frame = start;
    g.last_frame = start + n - 1;
    groups.push_back(g);
    if (g.last_frame + 1 >= frames.n_frames) break;  // all frames covered
    start += hop;
  }
  return groups;
}

AudioSignal extract_group_span(const FrameSequence& frames,
                               const GroupSpan& span) {
  const std::size_t n = span.last_frame - span.first_frame + 1;
  const std::size_t span_len = (n - 1) * frames.hop + frames.frame_len;
  AudioSignal out;
  out.sample_rate = frames.sample_rate;
  out.samples.assign(span_len, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t f = std::min(span.first_frame + i, frames.n_frames - 1);
    auto fr = frames.frame(f);
    std::copy(fr.begin(), fr.end(),
              out.samples.begin() + static_cast<std::ptrdiff_t>(i * frames.hop));
  }
  return out;
}

std::vector<double> group_ins_vector(const AudioSignal& group_samples,
                                     const InsConfig& cfg) {
  return ins_profile(group_samples, cfg).ins;
}

double delta_ins(std::span<const double> v_curr, std::span<const double> v_prev) {
  if (v_curr.size() != v_prev.size())
    throw DataError("delta_ins: vector length mismatch");
  if (v_curr.empty()) throw DataError("delta_ins: empty vectors");
  double diff = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < v_curr.size(); ++i) {
    diff += (v_curr[i] - v_prev[i]) * (v_curr[i] - v_prev[i]);
    na += v_curr[i] * v_curr[i];
    nb += v_prev[i] * v_prev[i];
  }
  const double denom = std::sqrt(na) + std::sqrt(nb);
  if (denom == 0.0) return 0.0;
  return std::clamp(std::sqrt(diff) / denom, 0.0, 1.0);
}

double median_threshold(std::span<const double> deltas) {
  if (deltas.empty()) throw DataError("median_threshold: empty input");
  std::vector<double> v(deltas.begin(), deltas.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::size_t owning_group(std::size_t frame_index,
                         std::span<const GroupSpan> groups) {
  if (groups.empty()) throw DataError("owning_group: no groups");
  std::size_t best = 0;
  bool found = false;
  for (const auto& g : groups) {
    if (g.first_frame <= frame_index && frame_index <= g.last_frame) {
      best = g.index;
      found = true;
    }
    if (g.first_frame > frame_index) break;
  }
  if (!found) best = groups.back().index;  // frames past every span
  return best;
}

}  // namespace ara
