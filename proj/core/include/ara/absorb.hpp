// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ara/detect.hpp"
#include "ara/framing.hpp"
#include "ara/ins.hpp"

namespace ara {

/// Constants of the two-branch absorption law. `masked_*` shape the
/// sigmoid applied inside masked groups, `speech_*` the one for relevant
/// speech; min_shift keeps frames from being absorbed completely and
/// speech_max_gain bounds the boost of relevant regions.
struct AbsorptionParams {
  double masked_growth = 17.0;      // k
  double masked_inflection = -0.2;  // d0
  double speech_growth = 13.0;      // k'
  double speech_inflection = 0.5;   // d0'
  double min_shift = 0.05;          // S
  double speech_max_gain = 1.2;     // L'
  double group_importance = 0.7;    // p
  double theta_ins = 0.4;

  void validate() const;
};

/// Evolving per-utterance state: the recursive maximum absorption and the
/// previous frame's INS vector.
struct AbsorptionState {
  double max_absorption = 0.0;  // L(m)
  std::vector<double> prev_frame_ins;
};

/// End-to-end pipeline configuration. Group-level INS runs the full
/// surrogate test per reverberation group; frame-level INS uses the
/// reduced per-frame mode.
struct ProcessConfig {
  double frame_ms = 32.0;
  double frame_overlap = 0.5;
  DetectConfig detect;
  InsConfig group_ins;
  InsConfig frame_ins = InsConfig::fast_frame_mode();
  AbsorptionParams params;
  std::uint64_t seed = 0;
  bool peak_normalize = true;
};

/// Per-frame record for diagnostics CSV output.
struct FrameDiagnostic {
  std::size_t frame = 0;
  double time_s = 0.0;
  double distance = 0.0;   // d(l)
  double delta_ins = 0.0;  // of the owning group
  bool masked = false;
  double gain = 0.0;  // A(m,l)
};

/// Normalized variation between consecutive per-frame INS vectors.
double frame_distance(std::span<const double> v_curr,
                      std::span<const double> v_prev);

/// F(d) = d^(1.2 - d), with F(0) = 0.
double emphasis_factor(double d);

/// L(m) = p * delta + (1 - p) * L(m-1).
double update_max_absorption(double l_prev, double delta, double p);

/// The two-branch sigmoid absorption gain for one frame.
double absorption_gain(double d, double delta_ins, const AbsorptionState& state,
                       const AbsorptionParams& params);

/// Full adaptive absorption: frame, segment into reverberation groups,
/// detect masking via the INS variation, apply the per-frame gain law and
/// resynthesize. Output length equals input length; deterministic per seed.
AudioSignal process(const AudioSignal& signal, const ProcessConfig& cfg,
                    std::vector<FrameDiagnostic>* diagnostics = nullptr,
                    std::vector<ReverbGroup>* groups_out = nullptr);

}  // namespace ara
