// include/mixswitch/audio.h

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

#ifndef MIXSWITCH_AUDIO_H_
#define MIXSWITCH_AUDIO_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace mixswitch {

// The whole pipeline runs at a fixed rate; resampling is rejected, not done.
constexpr int kSampleRate = 16000;

// Powers below this are treated as silence; dB conversions refuse to go
// lower instead of returning -inf.
constexpr double kPowerFloor = 1e-30;

/// Mono waveform. Samples are linear amplitude held as doubles internally
/// regardless of the on-disk format.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = kSampleRate;

  AudioBuffer() = default;
  AudioBuffer(std::vector<double> s, int rate) : samples(std::move(s)), sample_rate(rate) {}

  size_t NumSamples() const { return samples.size(); }
  bool Empty() const { return samples.empty(); }
  double DurationSeconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

/// Half-open sample index range [begin, end).
struct SampleRange {
  size_t begin = 0;
  size_t end = 0;
  size_t Length() const { return end - begin; }
};

/// Time-averaged power: sum of squared samples over the region divided by
/// the region length in samples. With no region, averages the whole buffer.
/// Throws std::domain_error("empty power region") on empty input.
double Power(const AudioBuffer &buffer,
             std::optional<SampleRange> region = std::nullopt);

/// Linear gain g such that applying g to `other` makes
/// 10*log10(P_ref / (g^2 * P_other)) equal target_ratio_db.
/// Throws std::domain_error("silent source") if either power is below floor.
double GainForRatio(const AudioBuffer &reference, const AudioBuffer &other,
                    double target_ratio_db);

/// In-place scalar gain.
void ApplyGain(AudioBuffer *buffer, double gain);

/// 10*log10(numerator/denominator) with the silent-source floor guard.
double PowerRatioDb(double numerator_power, double denominator_power);

/// Throws std::domain_error if any sample is NaN/Inf. `what` names the
/// buffer in the message.
void CheckFinite(const AudioBuffer &buffer, const char *what);

}  // namespace mixswitch

#endif  // MIXSWITCH_AUDIO_H_
