// include/mixswitch/grid.h

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

#ifndef MIXSWITCH_GRID_H_
#define MIXSWITCH_GRID_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixswitch/asr_hook.h"
#include "mixswitch/extract.h"
#include "mixswitch/score.h"
#include "mixswitch/switching.h"
#include "mixswitch/vad.h"

namespace mixswitch {

/// One source utterance, reused across every grid cell so cells differ only
/// in SIR, SNR and noise type. Enrollments default to the source stems when
/// absent (spectral-gate mode).
struct UttEntry {
  std::string utt_id;
  std::string target;       // wav path
  std::string interferer;   // wav path
  uint64_t seed = 0;
  std::string text;         // reference transcript; empty = no CER
  std::string target_enroll;
  std::string interferer_enroll;
  std::optional<uint64_t> noise_offset;
};

enum class ScoreSource {
  // f = spec SIR - spec SNR. Mixing pins the measured ratios to the spec
  // values, so the nominal difference is the true score of the cell.
  kGroundTruth,
  kEstimated,
};

struct GridConfig {
  std::vector<double> sir_list;
  std::vector<double> snr_list;
  // (name, wav path) per noise environment.
  std::vector<std::pair<std::string, std::string>> noise_types;
  ExtractorSpec extractor;
  VadConfig vad;
  ScoreConfig score;
  double lambda_db = kDefaultLambdaDb;
  ScoreSource score_source = ScoreSource::kEstimated;
  std::optional<AsrHook> hook;
  std::string workdir;  // scratch space for ASR temp files
  int threads = 0;      // 0 = OpenMP default
};

/// Per-utterance outcome inside one cell. `error` is empty on success.
struct UttResult {
  std::string utt_id;
  std::string noise_type;
  double sir_db = 0.0;
  double snr_db = 0.0;
  double f_true_db = 0.0;
  SwitchScore score;
  InputChoice choice = InputChoice::kEnhanced;
  double overlap_ratio = 0.0;
  std::optional<double> cer_enhanced;
  std::optional<double> cer_mixture;
  std::optional<double> cer_switched;
  std::string error;
};

struct GridCell {
  std::string noise_type;
  double sir_db = 0.0;
  double snr_db = 0.0;
  size_t n_utts = 0;    // rows aggregated
  size_t n_failed = 0;  // rows skipped with an error tag
  double mixture_chosen_fraction = 0.0;
  double mean_f_error_db = 0.0;  // mean |f_used - f_true|
  std::optional<double> cer_enhanced;
  std::optional<double> cer_mixture;
  std::optional<double> cer_switched;
  // (cer_mixture - cer_enhanced) / cer_mixture: gain of always enhancing.
  std::optional<double> rel_extract_gain;
  // (cer_enhanced - cer_switched) / cer_enhanced: gain of switching.
  std::optional<double> rel_switch_gain;
};

struct GridReport {
  std::vector<GridCell> cells;   // ordered by (noise_type, sir, snr) input order
  std::vector<UttResult> rows;   // sorted by (noise_type, sir, snr, utt_id)
  size_t n_failed = 0;
};

/// Runs mix -> extract -> VAD -> score -> decide (-> ASR -> CER with a hook)
/// for every utterance in every cell. Rows are independent and run under
/// OpenMP; the output is byte-identical for any thread count. Per-utterance
/// failures are recorded on the row and excluded from cell aggregates.
GridReport RunGrid(const std::vector<UttEntry> &utts, const GridConfig &config);

/// One CSV row per cell.
std::string ReportToCsv(const GridReport &report);

/// Matrix view per noise type: SIR rows by SNR columns; cells where the
/// mixture branch won the majority are flagged with '*'.
std::string ReportToTable(const GridReport &report);

/// Per-utterance JSON-lines detail stream.
std::string RowsToJsonLines(const GridReport &report);

}  // namespace mixswitch

#endif  // MIXSWITCH_GRID_H_
