// include/mixswitch/score.h

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

#ifndef MIXSWITCH_SCORE_H_
#define MIXSWITCH_SCORE_H_

#include <string>

#include "mixswitch/audio.h"
#include "mixswitch/extract.h"
#include "mixswitch/mix.h"
#include "mixswitch/vad.h"

namespace mixswitch {

enum class Provenance { kGroundTruth, kEstimated };

/// The switching score f = 10*log10(P_N / P_I) together with the powers it
/// was computed from. High f means interference is weak relative to noise,
/// which favors feeding the raw mixture to ASR.
struct SwitchScore {
  double f_db = 0.0;
  double interferer_power = 0.0;       // time-averaged linear power
  double noise_power = 0.0;            // time-averaged linear power
  size_t noise_region_frames = 0;      // frames behind the noise estimate
  Provenance provenance = Provenance::kEstimated;
};

struct TrueRatios {
  double sir_db = 0.0;
  double snr_db = 0.0;
  double f_db = 0.0;
};

/// Ratios measured on the ground-truth stems; f_db = sir_db - snr_db holds
/// to floating-point precision. Throws "silent source" on a silent stem.
TrueRatios ComputeTrueRatios(const MixtureBundle &bundle);

enum class ZeroNoisePolicy {
  kError,  // below-floor noise power raises "insufficient noise region"
  kClamp,  // score is clamped at clamp_db instead (batch sweeps)
};

struct ScoreConfig {
  int min_noise_frames = 5;  // 100 ms at 20 ms frames
  ZeroNoisePolicy zero_noise = ZeroNoisePolicy::kError;
  double clamp_db = -120.0;
};

/// Estimates f from the mixture alone: the interferer is extracted with its
/// clue and measured over the frames where the timeline marks it active; the
/// noise power is the raw mixture over frames where both speakers are
/// inactive. Both powers are per-sample averages over their own regions, so
/// differently sized regions compare directly.
/// Throws "insufficient noise region" when fewer than min_noise_frames
/// frames are Neither, "silent interference estimate" when the interference
/// power is below floor, "mask length mismatch" when the timeline does not
/// tile the mixture.
SwitchScore EstimateScore(const AudioBuffer &mixture, const SpeakerClue &interferer_clue,
                          const ExtractorSpec &extractor, const ActivityTimeline &timeline,
                          const ScoreConfig &config = {});

/// One results-stream line: {"utt_id", "f_db", "provenance", "p_i", "p_n",
/// "t_prime_frames"}.
std::string ScoreToJson(const std::string &utt_id, const SwitchScore &score);

std::string ProvenanceName(Provenance p);

}  // namespace mixswitch

#endif  // MIXSWITCH_SCORE_H_
