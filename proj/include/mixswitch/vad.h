// include/mixswitch/vad.h

// Copyright 2026  The mixswitch Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MIXSWITCH_VAD_H_
#define MIXSWITCH_VAD_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mixswitch/audio.h"

namespace mixswitch {

/// Energy VAD operating point. The threshold is relative to the loudest
/// frame of the utterance, so detection is invariant to overall gain.
struct VadConfig {
  int frame_ms = 20;          // must give a whole number of samples at 16 kHz
  double threshold_db = 40.0;  // dB below per-utterance peak frame power
  int hangover_frames = 2;     // inactive gaps shorter than this are filled
};

size_t FrameSamples(const VadConfig &config);

/// Per-frame activity of a clean stem. Frame f is active iff its mean power
/// exceeds peak_frame_power * 10^(-threshold_db/10); inactive runs shorter
/// than hangover_frames that touch an active frame are then marked active.
/// The trailing partial frame is dropped. Throws "empty signal" on empty
/// input.
std::vector<bool> DetectActivity(const AudioBuffer &stem, const VadConfig &config);

/// Joint presence of the two speakers in one frame.
enum class ActivityLabel : uint8_t {
  kNeither = 0,
  kTargetOnly = 1,
  kInterfererOnly = 2,
  kBoth = 3,
};

char LabelChar(ActivityLabel label);             // N, T, I, B
ActivityLabel LabelFromChar(char c);             // throws on anything else

struct ActivityTimeline {
  int frame_ms = 20;
  std::vector<ActivityLabel> labels;

  size_t NumFrames() const { return labels.size(); }
  bool TargetActive(size_t f) const {
    return labels[f] == ActivityLabel::kTargetOnly || labels[f] == ActivityLabel::kBoth;
  }
  bool InterfererActive(size_t f) const {
    return labels[f] == ActivityLabel::kInterfererOnly || labels[f] == ActivityLabel::kBoth;
  }
  size_t CountLabel(ActivityLabel label) const;
};

/// Pairs the two masks into the 4-class timeline. Throws
/// "mask length mismatch" when the masks differ in length.
ActivityTimeline JoinTimeline(const std::vector<bool> &target_mask,
                              const std::vector<bool> &interferer_mask,
                              int frame_ms);

/// (#Both frames) / (#frames with the target active). Throws
/// "no target speech" when the target is never active.
double OverlapRatio(const ActivityTimeline &timeline);

/// JSON form: {"frame_ms": 20, "labels": "BBTN..."}.
std::string TimelineToJson(const ActivityTimeline &timeline);
ActivityTimeline TimelineFromJson(const std::string &json_text);

}  // namespace mixswitch

#endif  // MIXSWITCH_VAD_H_
