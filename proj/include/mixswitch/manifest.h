// include/mixswitch/manifest.h

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

#ifndef MIXSWITCH_MANIFEST_H_
#define MIXSWITCH_MANIFEST_H_

#include <string>
#include <vector>

#include "mixswitch/grid.h"
#include "mixswitch/mix.h"

namespace mixswitch {

/// One `mix` manifest row: a MixtureSpec plus its utterance id.
struct ManifestRow {
  std::string utt_id;
  MixtureSpec spec;
};

/// JSON-lines manifest for `mix`: one object per line with keys target,
/// interferer, noise, sir_db, snr_db, seed; optional utt_id (defaults to
/// utt<line#>) and noise_offset. Blank lines are skipped; a malformed line
/// is fatal ("manifest error: ...").
std::vector<ManifestRow> LoadMixManifest(const std::string &path);

/// JSON-lines manifest for `grid`: keys target, interferer, seed; optional
/// utt_id, text, target_enroll, interferer_enroll, noise_offset. Per-cell
/// fields (sir_db, snr_db, noise) are ignored if present.
std::vector<UttEntry> LoadGridManifest(const std::string &path);

}  // namespace mixswitch

#endif  // MIXSWITCH_MANIFEST_H_
