// src/audio.cc

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

#include "mixswitch/audio.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mixswitch/kernels.h"

namespace mixswitch {

double Power(const AudioBuffer &buffer, std::optional<SampleRange> region) {
  if (buffer.Empty()) throw std::domain_error("empty power region");
  size_t begin = 0, end = buffer.NumSamples();
  if (region.has_value()) {
    begin = region->begin;
    end = region->end;
    if (begin >= end || end > buffer.NumSamples()) {
      throw std::domain_error("empty power region");
    }
  }
  const std::span<const double> window(buffer.samples.data() + begin, end - begin);
  return kernels::SumSquares(window) / static_cast<double>(end - begin);
}

double GainForRatio(const AudioBuffer &reference, const AudioBuffer &other,
                    double target_ratio_db) {
  const double p_ref = Power(reference);
  const double p_other = Power(other);
  if (p_ref < kPowerFloor || p_other < kPowerFloor) {
    throw std::domain_error("silent source");
  }
  return std::sqrt(p_ref / (p_other * std::pow(10.0, target_ratio_db / 10.0)));
}

void ApplyGain(AudioBuffer *buffer, double gain) {
  kernels::Scale(std::span<double>(buffer->samples), gain);
}

double PowerRatioDb(double numerator_power, double denominator_power) {
  if (numerator_power < kPowerFloor || denominator_power < kPowerFloor) {
    throw std::domain_error("silent source");
  }
  return 10.0 * std::log10(numerator_power / denominator_power);
}

void CheckFinite(const AudioBuffer &buffer, const char *what) {
  for (double v : buffer.samples) {
    if (!std::isfinite(v)) {
      throw std::domain_error(std::string("non-finite sample in ") + what);
    }
  }
}

}  // namespace mixswitch
