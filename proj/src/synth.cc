// src/synth.cc

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

#include "mixswitch/synth.h"

#include <cmath>

#include "mixswitch/rng.h"

namespace mixswitch {

AudioBuffer SineBurst(double seconds, double active_seconds, double freq_hz,
                      double amplitude, int sample_rate) {
  AudioBuffer out;
  out.sample_rate = sample_rate;
  const size_t n = static_cast<size_t>(seconds * sample_rate);
  const size_t n_active = std::min(n, static_cast<size_t>(active_seconds * sample_rate));
  out.samples.assign(n, 0.0);
  for (size_t i = 0; i < n_active; ++i) {
    out.samples[i] =
        amplitude * std::sin(2.0 * M_PI * freq_hz * static_cast<double>(i) / sample_rate);
  }
  return out;
}

AudioBuffer WhiteNoise(double seconds, uint64_t seed, double rms, int sample_rate) {
  AudioBuffer out;
  out.sample_rate = sample_rate;
  const size_t n = static_cast<size_t>(seconds * sample_rate);
  out.samples.resize(n);
  Rng rng(seed);
  for (size_t i = 0; i < n; ++i) out.samples[i] = rms * rng.Gaussian();
  return out;
}

}  // namespace mixswitch
