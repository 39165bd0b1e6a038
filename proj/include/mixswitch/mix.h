// include/mixswitch/mix.h

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

#ifndef MIXSWITCH_MIX_H_
#define MIXSWITCH_MIX_H_

#include <cstdint>
#include <optional>
#include <string>

#include "mixswitch/audio.h"

namespace mixswitch {

/// Recipe for one simulated mixture. Sources are WAV paths; gains are always
/// applied to the interferer and noise, never the target, so the two
/// target-referenced ratios are simultaneously achievable.
struct MixtureSpec {
  std::string target_source;
  std::string interferer_source;
  std::string noise_source;
  double sir_db = 0.0;
  double snr_db = 0.0;
  uint64_t seed = 0;
  // Engaged: noise window starts at this fixed sample index (mod noise
  // length). Empty: the offset is drawn from `seed`.
  std::optional<uint64_t> noise_offset;
};

/// Realized stems plus their sum. mixture[t] == target[t] + interferer[t] +
/// noise[t] exactly; true_* are recomputed from the stored stems.
struct MixtureBundle {
  AudioBuffer mixture;
  AudioBuffer target;
  AudioBuffer interferer;
  AudioBuffer noise;
  double true_sir_db = 0.0;
  double true_snr_db = 0.0;
};

/// Core mixing on in-memory stems. The interferer is zero-padded or truncated
/// to the target length, the noise is read circularly from `noise_offset`
/// (so a short noise loops from its start), and both are then scaled so that
/// the ratios measured over the full aligned buffers equal spec.sir_db /
/// spec.snr_db. Throws "silent source" / "rate mismatch" on bad stems.
MixtureBundle MixStems(const AudioBuffer &target, const AudioBuffer &interferer,
                       const AudioBuffer &noise, const MixtureSpec &spec);

/// Loads the three sources of `spec` from disk and mixes them.
MixtureBundle Mix(const MixtureSpec &spec);

}  // namespace mixswitch

#endif  // MIXSWITCH_MIX_H_
