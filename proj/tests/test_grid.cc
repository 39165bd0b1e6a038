// tests/test_grid.cc

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

#include "mixswitch/grid.h"
#include "mixswitch/manifest.h"
#include "mixswitch/synth.h"
#include "mixswitch/wav.h"
#include "testutil.h"

#include "doctest.h"

using namespace mixswitch;

namespace {

// Writes a small reusable utterance set: tone-burst speakers, silent in the
// last half second, over a long noise take.
struct GridFixture {
  test::TempDir dir{"grid"};
  std::string noise_path;
  std::vector<UttEntry> utts;

  explicit GridFixture(size_t n_utts) {
    noise_path = dir.File("noise.wav");
    SaveWav(WhiteNoise(8.0, 999, 0.05), noise_path);
    for (size_t i = 0; i < n_utts; ++i) {
      UttEntry utt;
      utt.utt_id = "utt" + std::to_string(100 + i);
      utt.target = dir.File(utt.utt_id + "_t.wav");
      utt.interferer = dir.File(utt.utt_id + "_i.wav");
      utt.seed = 1000 + i;
      SaveWav(SineBurst(4.0, 3.5, 380.0 + 7.0 * i, 0.3), utt.target);
      SaveWav(SineBurst(4.0, 3.5, 231.0 + 11.0 * i, 0.3), utt.interferer);
      utts.push_back(utt);
    }
  }

  GridConfig Config() const {
    GridConfig config;
    config.noise_types = {{"white", noise_path}};
    config.extractor.artifact_db = std::numeric_limits<double>::infinity();
    return config;
  }
};

}  // namespace

TEST_CASE("a single-cell run with one utterance reports one clean row") {
  GridFixture fx(1);
  GridConfig config = fx.Config();
  config.sir_list = {5.0};
  config.snr_list = {10.0};
  const GridReport report = RunGrid(fx.utts, config);
  REQUIRE(report.cells.size() == 1);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.cells[0].n_utts == 1);
  CHECK(report.cells[0].n_failed == 0);
  CHECK_FALSE(report.cells[0].cer_enhanced.has_value());
  CHECK_FALSE(report.cells[0].cer_mixture.has_value());
  CHECK_FALSE(report.cells[0].cer_switched.has_value());
  CHECK(report.rows[0].error.empty());
  CHECK(report.rows[0].overlap_ratio == 1.0);
}

TEST_CASE("ground-truth scores reproduce the threshold indicator exactly") {
  GridFixture fx(2);
  GridConfig config = fx.Config();
  config.sir_list = {0.0, 5.0, 10.0, 15.0, 20.0};
  config.snr_list = {20.0, 10.0, 0.0};
  config.score_source = ScoreSource::kGroundTruth;
  config.lambda_db = 10.0;
  const GridReport report = RunGrid(fx.utts, config);
  REQUIRE(report.cells.size() == 15);
  for (const GridCell &cell : report.cells) {
    const double expected = cell.sir_db - cell.snr_db >= 10.0 ? 1.0 : 0.0;
    CHECK(cell.mixture_chosen_fraction == expected);
    CHECK(cell.mean_f_error_db < 1e-9);
  }
}

TEST_CASE("estimated scores stay within a dB of the truth per cell") {
  GridFixture fx(3);
  GridConfig config = fx.Config();
  config.sir_list = {0.0, 10.0};
  config.snr_list = {10.0, 0.0};
  config.score_source = ScoreSource::kEstimated;
  const GridReport report = RunGrid(fx.utts, config);
  for (const GridCell &cell : report.cells) {
    CHECK(cell.n_failed == 0);
    CHECK(cell.mean_f_error_db <= 1.0);
  }
}

TEST_CASE("the report is byte-identical for any thread count") {
  GridFixture fx(3);
  GridConfig config = fx.Config();
  config.sir_list = {0.0, 10.0, 20.0};
  config.snr_list = {10.0, 0.0};
  config.score_source = ScoreSource::kEstimated;
  config.extractor.artifact_db = 20.0;

  config.threads = 1;
  const GridReport serial = RunGrid(fx.utts, config);
  config.threads = 4;
  const GridReport parallel = RunGrid(fx.utts, config);

  CHECK(ReportToCsv(serial) == ReportToCsv(parallel));
  CHECK(RowsToJsonLines(serial) == RowsToJsonLines(parallel));

  // And across repeated runs.
  const GridReport again = RunGrid(fx.utts, config);
  CHECK(ReportToCsv(parallel) == ReportToCsv(again));
}

TEST_CASE("a broken source is recorded per row, not fatal") {
  GridFixture fx(2);
  std::vector<UttEntry> utts = fx.utts;
  utts[1].target = fx.dir.File("missing.wav");
  GridConfig config = fx.Config();
  config.sir_list = {5.0};
  config.snr_list = {5.0};
  const GridReport report = RunGrid(utts, config);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.n_failed == 1);
  CHECK(report.cells[0].n_utts == 1);
  CHECK(report.cells[0].n_failed == 1);
  bool found_error = false;
  for (const UttResult &row : report.rows) {
    if (!row.error.empty()) {
      found_error = true;
      CHECK(row.utt_id == utts[1].utt_id);
    }
  }
  CHECK(found_error);
}

TEST_CASE("empty inputs are rejected up front") {
  GridFixture fx(1);
  GridConfig config = fx.Config();
  config.sir_list = {};
  config.snr_list = {0.0};
  CHECK_THROWS_WITH_AS(RunGrid(fx.utts, config), "empty grid axis", std::domain_error);
  config.sir_list = {0.0};
  CHECK_THROWS_WITH_AS(RunGrid({}, config), "empty manifest", std::domain_error);
}

TEST_CASE("csv carries one row per cell with stable headers") {
  GridFixture fx(1);
  GridConfig config = fx.Config();
  config.sir_list = {0.0, 20.0};
  config.snr_list = {10.0};
  config.score_source = ScoreSource::kGroundTruth;
  const std::string csv = ReportToCsv(RunGrid(fx.utts, config));
  CHECK(csv.find("noise_type,sir_db,snr_db,n_utts,n_failed,mixture_fraction,") == 0);
  CHECK(csv.find("\nwhite,0,10,1,0,0,") != std::string::npos);
  CHECK(csv.find("\nwhite,20,10,1,0,1,") != std::string::npos);
}

TEST_CASE("asr-backed cells aggregate consistent relative gains") {
  // Stub recognizer keyed on file size: mixtures and enhanced audio differ in
  // content, so give every branch the same fixed wrong-ish answer and check
  // the bookkeeping, not the acoustics.
  GridFixture fx(2);
  for (auto &utt : const_cast<std::vector<UttEntry> &>(fx.utts)) utt.text = "abcd";
  GridConfig config = fx.Config();
  config.sir_list = {0.0, 20.0};
  config.snr_list = {0.0};
  config.score_source = ScoreSource::kGroundTruth;
  AsrHook hook;
  hook.command_template = "ls {audio} > /dev/null && echo abXd";
  hook.timeout_s = 30.0;
  config.hook = hook;
  config.workdir = fx.dir.File("asr_work");
  config.threads = 2;

  const GridReport report = RunGrid(fx.utts, config);
  for (const GridCell &cell : report.cells) {
    REQUIRE(cell.cer_enhanced.has_value());
    REQUIRE(cell.cer_mixture.has_value());
    REQUIRE(cell.cer_switched.has_value());
    CHECK(*cell.cer_enhanced == doctest::Approx(0.25));
    CHECK(*cell.cer_mixture == doctest::Approx(0.25));
    // The switched branch is one of the two.
    CHECK(*cell.cer_switched == doctest::Approx(0.25));
    REQUIRE(cell.rel_extract_gain.has_value());
    CHECK(std::abs(*cell.rel_extract_gain -
                   (*cell.cer_mixture - *cell.cer_enhanced) / *cell.cer_mixture) <=
          1e-12);
    REQUIRE(cell.rel_switch_gain.has_value());
    CHECK(std::abs(*cell.rel_switch_gain -
                   (*cell.cer_enhanced - *cell.cer_switched) / *cell.cer_enhanced) <=
          1e-12);
  }
}

TEST_CASE("grid manifest parsing fills defaults") {
  test::TempDir dir("manifest");
  const std::string path = dir.File("m.jsonl");
  {
    std::ofstream f(path);
    f << R"({"target":"t.wav","interferer":"i.wav","seed":7})" << "\n";
    f << "\n";  // blank lines are fine
    f << R"({"utt_id":"named","target":"t2.wav","interferer":"i2.wav","seed":8,)"
      << R"("text":"hello","noise_offset":123})" << "\n";
  }
  const std::vector<UttEntry> utts = LoadGridManifest(path);
  REQUIRE(utts.size() == 2);
  CHECK(utts[0].utt_id == "utt0001");
  CHECK(utts[0].text.empty());
  CHECK_FALSE(utts[0].noise_offset.has_value());
  CHECK(utts[1].utt_id == "named");
  CHECK(utts[1].text == "hello");
  CHECK(utts[1].noise_offset == 123);
}

TEST_CASE("mix manifest parsing validates lines") {
  test::TempDir dir("manifest_mix");
  const std::string good = dir.File("good.jsonl");
  {
    std::ofstream f(good);
    f << R"({"target":"t.wav","interferer":"i.wav","noise":"n.wav",)"
      << R"("sir_db":3.5,"snr_db":12,"seed":9})" << "\n";
  }
  const std::vector<ManifestRow> rows = LoadMixManifest(good);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].spec.sir_db == 3.5);
  CHECK(rows[0].spec.seed == 9);

  const std::string bad = dir.File("bad.jsonl");
  {
    std::ofstream f(bad);
    f << "{not json}\n";
  }
  CHECK_THROWS_WITH_AS(LoadMixManifest(bad), doctest::Contains("manifest error"),
                       std::runtime_error);

  const std::string incomplete = dir.File("incomplete.jsonl");
  {
    std::ofstream f(incomplete);
    f << R"({"target":"t.wav"})" << "\n";
  }
  CHECK_THROWS_WITH_AS(LoadMixManifest(incomplete), doctest::Contains("manifest error"),
                       std::runtime_error);
}
