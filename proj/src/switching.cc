// src/switching.cc

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

#include "mixswitch/switching.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mixswitch {

InputChoice Decide(double f_db, double lambda_db) {
  if (!std::isfinite(f_db) || !std::isfinite(lambda_db)) {
    throw std::domain_error("invalid score");
  }
  // Strictly below the threshold -> enhance; equality keeps the mixture.
  return f_db < lambda_db ? InputChoice::kEnhanced : InputChoice::kMixture;
}

SwitchDecision MakeDecision(const std::string &utt_id, const SwitchScore &score,
                            double lambda_db) {
  SwitchDecision d;
  d.utt_id = utt_id;
  d.f_db = score.f_db;
  d.lambda_db = lambda_db;
  d.choice = Decide(score.f_db, lambda_db);
  d.score_provenance = score.provenance;
  return d;
}

const AudioBuffer &SelectInput(const AudioBuffer &mixture, const AudioBuffer &enhanced,
                               const SwitchDecision &decision) {
  if (mixture.NumSamples() != enhanced.NumSamples() ||
      mixture.sample_rate != enhanced.sample_rate) {
    throw std::domain_error("branch length mismatch");
  }
  return decision.choice == InputChoice::kMixture ? mixture : enhanced;
}

std::string ChoiceName(InputChoice choice) {
  return choice == InputChoice::kMixture ? "mixture" : "enhanced";
}

std::string DecisionToJson(const SwitchDecision &decision) {
  nlohmann::json j;
  j["utt_id"] = decision.utt_id;
  j["f_db"] = decision.f_db;
  j["lambda_db"] = decision.lambda_db;
  j["choice"] = ChoiceName(decision.choice);
  j["provenance"] = ProvenanceName(decision.score_provenance);
  return j.dump();
}

std::pair<double, double> CalibrateLambda(const std::vector<CalibrationRecord> &records,
                                          const std::vector<double> &grid) {
  if (records.empty() || grid.empty()) {
    throw std::domain_error("empty calibration set");
  }
  double best_lambda = 0.0;
  double best_cer = 0.0;
  bool first = true;
  for (double lambda : grid) {
    double total = 0.0;
    for (const CalibrationRecord &r : records) {
      total += r.f_db < lambda ? r.cer_enhanced : r.cer_mixture;
    }
    total /= static_cast<double>(records.size());
    // Ties break toward the smallest candidate: strict improvement required,
    // scanning smaller candidates first.
    if (first || total < best_cer || (total == best_cer && lambda < best_lambda)) {
      best_lambda = lambda;
      best_cer = total;
      first = false;
    }
  }
  return {best_lambda, best_cer};
}

std::vector<double> DefaultLambdaGrid() {
  std::vector<double> grid;
  for (int v = -20; v <= 20; ++v) grid.push_back(static_cast<double>(v));
  return grid;
}

std::vector<CalibrationRecord> LoadCalibrationCsv(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<CalibrationRecord> records;
  std::string line;
  bool header = true;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      if (line != "utt_id,f_db,cer_enhanced,cer_mixture") {
        throw std::runtime_error("calibration csv: unexpected header: " + line);
      }
      header = false;
      continue;
    }
    std::stringstream ss(line);
    std::string utt_id, f, ce, cm;
    if (!std::getline(ss, utt_id, ',') || !std::getline(ss, f, ',') ||
        !std::getline(ss, ce, ',') || !std::getline(ss, cm)) {
      throw std::runtime_error("calibration csv: bad row at line " +
                               std::to_string(line_no));
    }
    CalibrationRecord r;
    r.utt_id = utt_id;
    try {
      r.f_db = std::stod(f);
      r.cer_enhanced = std::stod(ce);
      r.cer_mixture = std::stod(cm);
    } catch (const std::exception &) {
      throw std::runtime_error("calibration csv: bad number at line " +
                               std::to_string(line_no));
    }
    if (r.cer_enhanced < 0 || r.cer_mixture < 0) {
      throw std::runtime_error("calibration csv: negative CER at line " +
                               std::to_string(line_no));
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace mixswitch
