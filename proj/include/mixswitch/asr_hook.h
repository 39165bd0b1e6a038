// include/mixswitch/asr_hook.h

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

#ifndef MIXSWITCH_ASR_HOOK_H_
#define MIXSWITCH_ASR_HOOK_H_

#include <string>

#include "mixswitch/audio.h"

namespace mixswitch {

enum class TranscriptNormalizer {
  kNone,
  kStripWhitespace,  // removes all ASCII whitespace (CER is character-level)
};

/// Bridge to an external recognizer. The command gets the path of a PCM16
/// WAV in place of the {audio} placeholder and must print the hypothesis on
/// stdout.
struct AsrHook {
  std::string command_template;  // exactly one "{audio}" placeholder
  double timeout_s = 600.0;
  TranscriptNormalizer normalizer = TranscriptNormalizer::kNone;
};

/// Writes `audio` to a temp WAV under `workdir`, runs the hook command and
/// returns its normalized stdout. Throws std::invalid_argument("asr template
/// ...") on a malformed template, std::runtime_error("asr failed: ...") on
/// nonzero exit and std::runtime_error("asr timeout") past the deadline.
std::string RunAsr(const AsrHook &hook, const AudioBuffer &audio,
                   const std::string &workdir);

}  // namespace mixswitch

#endif  // MIXSWITCH_ASR_HOOK_H_
