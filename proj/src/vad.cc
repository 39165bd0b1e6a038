// src/vad.cc

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

#include "mixswitch/vad.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mixswitch/kernels.h"

#include "json.hpp"

namespace mixswitch {

size_t FrameSamples(const VadConfig &config) {
  if (config.frame_ms <= 0 || (config.frame_ms * kSampleRate) % 1000 != 0) {
    throw std::domain_error("frame_ms must give whole samples at 16 kHz");
  }
  return static_cast<size_t>(config.frame_ms) * kSampleRate / 1000;
}

std::vector<bool> DetectActivity(const AudioBuffer &stem, const VadConfig &config) {
  if (stem.Empty()) throw std::domain_error("empty signal");
  const size_t frame_len = FrameSamples(config);
  const std::vector<double> powers = kernels::FramePowers(stem.samples, frame_len);
  const size_t nf = powers.size();
  std::vector<bool> active(nf, false);
  if (nf == 0) return active;

  const double peak = *std::max_element(powers.begin(), powers.end());
  const double threshold = peak * std::pow(10.0, -config.threshold_db / 10.0);
  for (size_t f = 0; f < nf; ++f) active[f] = powers[f] > threshold;

  // Hangover smoothing: fill inactive runs shorter than hangover_frames that
  // touch an active frame.
  if (config.hangover_frames > 0) {
    std::vector<bool> smoothed = active;
    size_t f = 0;
    while (f < nf) {
      if (active[f]) {
        ++f;
        continue;
      }
      size_t run_end = f;
      while (run_end < nf && !active[run_end]) ++run_end;
      const size_t run_len = run_end - f;
      const bool touches_active = (f > 0 && active[f - 1]) || (run_end < nf && active[run_end]);
      if (run_len < static_cast<size_t>(config.hangover_frames) && touches_active) {
        std::fill(smoothed.begin() + static_cast<long>(f),
                  smoothed.begin() + static_cast<long>(run_end), true);
      }
      f = run_end;
    }
    active = smoothed;
  }
  return active;
}

char LabelChar(ActivityLabel label) {
  switch (label) {
    case ActivityLabel::kNeither: return 'N';
    case ActivityLabel::kTargetOnly: return 'T';
    case ActivityLabel::kInterfererOnly: return 'I';
    case ActivityLabel::kBoth: return 'B';
  }
  throw std::domain_error("bad activity label");
}

ActivityLabel LabelFromChar(char c) {
  switch (c) {
    case 'N': return ActivityLabel::kNeither;
    case 'T': return ActivityLabel::kTargetOnly;
    case 'I': return ActivityLabel::kInterfererOnly;
    case 'B': return ActivityLabel::kBoth;
    default: throw std::domain_error(std::string("bad activity label char: ") + c);
  }
}

size_t ActivityTimeline::CountLabel(ActivityLabel label) const {
  return static_cast<size_t>(std::count(labels.begin(), labels.end(), label));
}

ActivityTimeline JoinTimeline(const std::vector<bool> &target_mask,
                              const std::vector<bool> &interferer_mask,
                              int frame_ms) {
  if (target_mask.size() != interferer_mask.size()) {
    throw std::domain_error("mask length mismatch");
  }
  ActivityTimeline timeline;
  timeline.frame_ms = frame_ms;
  timeline.labels.resize(target_mask.size());
  for (size_t f = 0; f < target_mask.size(); ++f) {
    if (target_mask[f]) {
      timeline.labels[f] =
          interferer_mask[f] ? ActivityLabel::kBoth : ActivityLabel::kTargetOnly;
    } else {
      timeline.labels[f] =
          interferer_mask[f] ? ActivityLabel::kInterfererOnly : ActivityLabel::kNeither;
    }
  }
  return timeline;
}

double OverlapRatio(const ActivityTimeline &timeline) {
  const size_t both = timeline.CountLabel(ActivityLabel::kBoth);
  const size_t target_active = both + timeline.CountLabel(ActivityLabel::kTargetOnly);
  if (target_active == 0) throw std::domain_error("no target speech");
  return static_cast<double>(both) / static_cast<double>(target_active);
}

std::string TimelineToJson(const ActivityTimeline &timeline) {
  std::string compact;
  compact.reserve(timeline.labels.size());
  for (ActivityLabel label : timeline.labels) compact.push_back(LabelChar(label));
  nlohmann::json j;
  j["frame_ms"] = timeline.frame_ms;
  j["labels"] = compact;
  return j.dump();
}

ActivityTimeline TimelineFromJson(const std::string &json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  ActivityTimeline timeline;
  timeline.frame_ms = j.at("frame_ms").get<int>();
  const std::string compact = j.at("labels").get<std::string>();
  timeline.labels.reserve(compact.size());
  for (char c : compact) timeline.labels.push_back(LabelFromChar(c));
  return timeline;
}

}  // namespace mixswitch
