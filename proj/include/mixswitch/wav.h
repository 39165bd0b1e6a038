// include/mixswitch/wav.h

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

#ifndef MIXSWITCH_WAV_H_
#define MIXSWITCH_WAV_H_

#include <string>

#include "mixswitch/audio.h"

namespace mixswitch {

enum class WavFormat {
  kPcm16,    // 16-bit signed PCM
  kFloat32,  // IEEE float
};

/// Reads a RIFF/WAVE file. Accepted: mono, 16 kHz, PCM16 or float32.
/// Throws std::runtime_error("decode error: ...") on malformed input,
/// std::domain_error("rate mismatch: ...") on other sample rates and
/// std::domain_error("channel error: ...") on multichannel files.
AudioBuffer LoadWav(const std::string &path);

/// Writes `buffer` in the given format. PCM16 samples are clamped to
/// [-1, 32767/32768] before quantization.
void SaveWav(const AudioBuffer &buffer, const std::string &path,
             WavFormat format = WavFormat::kFloat32);

}  // namespace mixswitch

#endif  // MIXSWITCH_WAV_H_
