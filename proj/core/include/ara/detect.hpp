// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ara/framing.hpp"
#include "ara/ins.hpp"

namespace ara {

/// Reverberation-group segmentation parameters. theta_ins is the masking
/// decision threshold on the normalized INS variation; the offline median
/// mode recomputes it per utterance instead.
struct DetectConfig {
  int n_frames_per_group = 8;
  double group_overlap_frac = 0.5;
  double theta_ins = 0.4;
  bool theta_from_median = false;

  void validate() const;
  std::size_t group_hop() const;
};

/// Frame-index span of one reverberation group. Nominal spans always hold
/// n_frames_per_group frames; indices past the last real frame repeat it.
struct GroupSpan {
  std::size_t index = 0;
  std::size_t first_frame = 0;
  std::size_t last_frame = 0;  // inclusive, nominal (may exceed real frames)
};

/// A segmented group with its INS vector and non-stationarity variation.
struct ReverbGroup {
  GroupSpan span;
  std::vector<double> ins_vector;  // per-scale INS over the group span
  double delta_ins = 0.0;
  bool masked = false;  // delta_ins <= theta_ins
  double start_time_s = 0.0;
};

/// Groups of N consecutive frames at hop N*(1-overlap). The trailing
/// partial group is kept; its missing frames repeat the last real frame.
std::vector<GroupSpan> segment_groups(const FrameSequence& frames,
                                      const DetectConfig& cfg);

/// Contiguous sample span of a group, stitched from its (possibly repeated)
/// frames. All groups of one utterance yield equal-length segments.
AudioSignal extract_group_span(const FrameSequence& frames,
                               const GroupSpan& span);

/// Per-scale INS values of one group segment, concatenated into a vector.
std::vector<double> group_ins_vector(const AudioSignal& group_samples,
                                     const InsConfig& cfg);

/// Normalized variation ||a - b|| / (||a|| + ||b||) in [0, 1]; two zero
/// vectors compare as 0 (steady silence carries no novelty).
double delta_ins(std::span<const double> v_curr, std::span<const double> v_prev);

/// Sample median (mean of the middle pair for even counts).
double median_threshold(std::span<const double> deltas);

/// Index of the most recent group whose span contains frame l.
std::size_t owning_group(std::size_t frame_index,
                         std::span<const GroupSpan> groups);

}  // namespace ara
