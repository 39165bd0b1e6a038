// tests/test_switching.cc

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

#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include "mixswitch/switching.h"
#include "testutil.h"

#include "doctest.h"

using namespace mixswitch;

namespace {

CalibrationRecord Record(double f_db, double cer_enhanced, double cer_mixture) {
  CalibrationRecord r;
  r.utt_id = "utt";
  r.f_db = f_db;
  r.cer_enhanced = cer_enhanced;
  r.cer_mixture = cer_mixture;
  return r;
}

// Dev set shaped so that records below 10 dB prefer enhancement and records
// at or above 10 dB prefer the mixture.
std::vector<CalibrationRecord> SyntheticDevSet() {
  std::vector<CalibrationRecord> records;
  for (double f = 0.5; f < 20.0; f += 1.0) {
    if (f < 10.0) {
      records.push_back(Record(f, 0.10, 0.50));
    } else {
      records.push_back(Record(f, 0.50, 0.10));
    }
  }
  return records;
}

}  // namespace

TEST_CASE("equality routes to the mixture branch") {
  CHECK(Decide(10.0, 10.0) == InputChoice::kMixture);
}

TEST_CASE("scores far below the threshold enhance") {
  CHECK(Decide(-20.0, 10.0) == InputChoice::kEnhanced);
}

TEST_CASE("the inequality is strict at the boundary") {
  CHECK(Decide(9.999, 10.0) == InputChoice::kEnhanced);
}

TEST_CASE("non-finite scores are rejected") {
  CHECK_THROWS_WITH_AS(Decide(std::numeric_limits<double>::quiet_NaN(), 10.0),
                       "invalid score", std::domain_error);
  CHECK_THROWS_WITH_AS(Decide(0.0, std::numeric_limits<double>::infinity()),
                       "invalid score", std::domain_error);
}

TEST_CASE("decision is a step function with a single transition") {
  const double lambda = 3.0;
  bool seen_mixture = false;
  for (double f = -10.0; f <= 10.0; f += 0.25) {
    const bool mixture = Decide(f, lambda) == InputChoice::kMixture;
    if (seen_mixture) CHECK(mixture);  // never switches back
    if (mixture) {
      seen_mixture = true;
      CHECK(f >= lambda);
    } else {
      CHECK(f < lambda);
    }
  }
  CHECK(seen_mixture);
}

TEST_CASE("raising the threshold never flips enhanced to mixture") {
  std::mt19937 gen(61);
  std::uniform_real_distribution<double> dist(-25.0, 25.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double f = dist(gen);
    const double lo = dist(gen);
    const double hi = lo + std::abs(dist(gen));
    if (Decide(f, lo) == InputChoice::kEnhanced) {
      CHECK(Decide(f, hi) == InputChoice::kEnhanced);
    }
  }
}

TEST_CASE("select returns the chosen branch bitwise") {
  std::mt19937 gen(62);
  const AudioBuffer mixture = test::RandomBuffer(gen, 2000);
  const AudioBuffer enhanced = test::RandomBuffer(gen, 2000);

  SwitchScore score;
  score.f_db = 15.0;
  const SwitchDecision to_mixture = MakeDecision("u", score, 10.0);
  CHECK(SelectInput(mixture, enhanced, to_mixture).samples == mixture.samples);

  score.f_db = -3.0;
  const SwitchDecision to_enhanced = MakeDecision("u", score, 10.0);
  CHECK(SelectInput(mixture, enhanced, to_enhanced).samples == enhanced.samples);
}

TEST_CASE("select rejects mismatched branches") {
  std::mt19937 gen(63);
  const AudioBuffer a = test::RandomBuffer(gen, 2000);
  const AudioBuffer b = test::RandomBuffer(gen, 1999);
  SwitchDecision d;
  CHECK_THROWS_WITH_AS(SelectInput(a, b, d), "branch length mismatch",
                       std::domain_error);
}

TEST_CASE("calibration picks the largest lambda when enhancement dominates") {
  std::vector<CalibrationRecord> records;
  for (double f : {2.5, 7.5, 12.5, 17.5}) records.push_back(Record(f, 0.1, 0.2));
  const auto [lambda, cer] = CalibrateLambda(records, {0.0, 5.0, 10.0, 15.0, 20.0});
  CHECK(lambda == 20.0);
  CHECK(cer == doctest::Approx(0.1));
}

TEST_CASE("calibration picks the smallest lambda when the mixture dominates") {
  std::vector<CalibrationRecord> records;
  for (double f : {2.5, 7.5, 12.5, 17.5}) records.push_back(Record(f, 0.3, 0.05));
  const auto [lambda, cer] = CalibrateLambda(records, {0.0, 5.0, 10.0, 15.0, 20.0});
  CHECK(lambda == 0.0);
  CHECK(cer == doctest::Approx(0.05));
}

TEST_CASE("calibration recovers the designed 10 dB threshold") {
  const auto [lambda, cer] = CalibrateLambda(SyntheticDevSet(), {0.0, 5.0, 10.0, 15.0, 20.0});
  CHECK(lambda == 10.0);
  CHECK(cer == doctest::Approx(0.10));
}

TEST_CASE("no grid candidate beats the returned lambda") {
  std::mt19937 gen(64);
  std::uniform_real_distribution<double> f_dist(-15.0, 25.0);
  std::uniform_real_distribution<double> cer_dist(0.0, 1.0);
  const std::vector<double> grid = DefaultLambdaGrid();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<CalibrationRecord> records;
    for (int i = 0; i < 30; ++i) {
      records.push_back(Record(f_dist(gen), cer_dist(gen), cer_dist(gen)));
    }
    const auto [lambda, cer] = CalibrateLambda(records, grid);
    for (double candidate : grid) {
      double total = 0.0;
      for (const auto &r : records) {
        total += r.f_db < candidate ? r.cer_enhanced : r.cer_mixture;
      }
      total /= static_cast<double>(records.size());
      CHECK(cer <= total);
      if (total == cer) CHECK(lambda <= candidate);  // ties go to the smaller
    }
  }
}

TEST_CASE("empty calibration inputs are rejected") {
  CHECK_THROWS_WITH_AS(CalibrateLambda({}, {1.0}), "empty calibration set",
                       std::domain_error);
  CHECK_THROWS_WITH_AS(CalibrateLambda({Record(0, 0.1, 0.1)}, {}),
                       "empty calibration set", std::domain_error);
}

TEST_CASE("calibration records load from csv") {
  test::TempDir dir("calib");
  const std::string path = dir.File("records.csv");
  {
    std::ofstream f(path);
    f << "utt_id,f_db,cer_enhanced,cer_mixture\n";
    f << "u1,4.5,0.12,0.30\n";
    f << "u2,-2.0,0.40,0.10\n";
  }
  const std::vector<CalibrationRecord> records = LoadCalibrationCsv(path);
  REQUIRE(records.size() == 2);
  CHECK(records[0].utt_id == "u1");
  CHECK(records[0].f_db == 4.5);
  CHECK(records[1].cer_mixture == 0.10);

  const std::string bad = dir.File("bad.csv");
  {
    std::ofstream f(bad);
    f << "utt_id,f_db,cer_enhanced,cer_mixture\n";
    f << "u1,not_a_number,0.1,0.1\n";
  }
  CHECK_THROWS_AS(LoadCalibrationCsv(bad), std::runtime_error);
}

TEST_CASE("decision serializes with its provenance") {
  SwitchScore score;
  score.f_db = 12.0;
  score.provenance = Provenance::kGroundTruth;
  const SwitchDecision d = MakeDecision("utt9", score, 10.0);
  const std::string line = DecisionToJson(d);
  CHECK(line.find("\"choice\":\"mixture\"") != std::string::npos);
  CHECK(line.find("\"lambda_db\":10.0") != std::string::npos);
  CHECK(line.find("\"provenance\":\"ground_truth\"") != std::string::npos);
}
