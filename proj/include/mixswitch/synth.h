// include/mixswitch/synth.h

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

#ifndef MIXSWITCH_SYNTH_H_
#define MIXSWITCH_SYNTH_H_

#include <cstdint>

#include "mixswitch/audio.h"

namespace mixswitch {

// Synthetic test material: stand-ins for utterances and noise textures when
// no corpus is at hand.

/// Sine of `freq_hz` active on [0, active_seconds), zero afterwards.
AudioBuffer SineBurst(double seconds, double active_seconds, double freq_hz,
                      double amplitude = 0.3, int sample_rate = kSampleRate);

/// Stationary white Gaussian noise at the given RMS.
AudioBuffer WhiteNoise(double seconds, uint64_t seed, double rms = 0.05,
                       int sample_rate = kSampleRate);

}  // namespace mixswitch

#endif  // MIXSWITCH_SYNTH_H_
