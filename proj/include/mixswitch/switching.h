// include/mixswitch/switching.h

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

#ifndef MIXSWITCH_SWITCHING_H_
#define MIXSWITCH_SWITCHING_H_

#include <string>
#include <utility>
#include <vector>

#include "mixswitch/audio.h"
#include "mixswitch/score.h"

namespace mixswitch {

// Default threshold when no calibration data is supplied.
constexpr double kDefaultLambdaDb = 10.0;

enum class InputChoice { kEnhanced, kMixture };

/// Enhanced iff f_db < lambda_db; equality routes to the mixture.
/// Throws std::domain_error("invalid score") on non-finite input.
InputChoice Decide(double f_db, double lambda_db);

struct SwitchDecision {
  std::string utt_id;
  double f_db = 0.0;
  double lambda_db = kDefaultLambdaDb;
  InputChoice choice = InputChoice::kEnhanced;
  Provenance score_provenance = Provenance::kEstimated;
};

SwitchDecision MakeDecision(const std::string &utt_id, const SwitchScore &score,
                            double lambda_db);

/// Returns the branch named by the decision, untouched. Throws
/// "branch length mismatch" when the two buffers disagree in length.
const AudioBuffer &SelectInput(const AudioBuffer &mixture, const AudioBuffer &enhanced,
                               const SwitchDecision &decision);

std::string ChoiceName(InputChoice choice);
std::string DecisionToJson(const SwitchDecision &decision);

/// One dev-set utterance: its score and the error rate of each branch.
struct CalibrationRecord {
  std::string utt_id;
  double f_db = 0.0;
  double cer_enhanced = 0.0;
  double cer_mixture = 0.0;
};

/// Exhaustive search over `grid`: for each candidate the total CER is the
/// per-record branch CER under that threshold, averaged over records. Returns
/// the minimizing candidate; ties break toward the smallest lambda.
/// Throws "empty calibration set" on empty input.
std::pair<double, double> CalibrateLambda(const std::vector<CalibrationRecord> &records,
                                          const std::vector<double> &grid);

/// Default candidate grid, -20 to 20 dB in 1 dB steps.
std::vector<double> DefaultLambdaGrid();

/// CSV with header utt_id,f_db,cer_enhanced,cer_mixture.
std::vector<CalibrationRecord> LoadCalibrationCsv(const std::string &path);

}  // namespace mixswitch

#endif  // MIXSWITCH_SWITCHING_H_
