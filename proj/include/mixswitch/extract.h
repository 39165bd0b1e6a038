// include/mixswitch/extract.h

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

#ifndef MIXSWITCH_EXTRACT_H_
#define MIXSWITCH_EXTRACT_H_

#include <cstdint>
#include <optional>
#include <string>

#include "mixswitch/audio.h"

namespace mixswitch {

enum class ExtractorKind {
  // Returns the known clean stem plus seeded noise at a fixed
  // artifact-to-signal ratio. Models enhancement artifacts at an exactly
  // controllable severity.
  kOracle,
  // STFT-domain gate steered by the enrollment's average spectrum. A
  // non-oracle sanity path; it only attenuates, never amplifies.
  kSpectralGate,
};

struct ExtractorSpec {
  ExtractorKind kind = ExtractorKind::kOracle;
  // Oracle only: artifact-to-signal ratio in dB. +inf disables injection.
  double artifact_db = 20.0;
  // Spectral gate only: attenuation depth applied to rejected bands.
  double gate_threshold_db = 15.0;
  uint64_t seed = 0;
};

enum class ClueRole { kTarget, kInterferer };

/// Which speaker to pull out of the mixture. Oracle mode needs the clean
/// stem; the spectral gate needs an enrollment utterance of that speaker.
struct SpeakerClue {
  ClueRole role = ClueRole::kTarget;
  std::optional<AudioBuffer> enrollment;
  std::optional<AudioBuffer> oracle_stem;
};

/// Extracts the clue's speaker from `mixture`. Output length always equals
/// the mixture length, and identical inputs give bit-identical output.
/// Throws "clue mismatch" when the mode's required clue field is missing or
/// misshapen, "silent source" on a zero-power oracle stem.
AudioBuffer Extract(const AudioBuffer &mixture, const SpeakerClue &clue,
                    const ExtractorSpec &spec);

ExtractorKind ExtractorKindFromString(const std::string &name);
std::string ExtractorKindName(ExtractorKind kind);

}  // namespace mixswitch

#endif  // MIXSWITCH_EXTRACT_H_
