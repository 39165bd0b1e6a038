// tests/test_cli.cc

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

// End-to-end runs of the installed CLI binary.

#include <cstdlib>
#include <fstream>
#include <string>

#include "mixswitch/wav.h"
#include "testutil.h"

#include "doctest.h"

#ifndef MIXSWITCH_CLI_PATH
#error "MIXSWITCH_CLI_PATH must point at the CLI binary"
#endif

namespace {

using mixswitch::test::TempDir;

struct CommandResult {
  int exit_code = -1;
  std::string stdout_text;
};

CommandResult Run(const std::string &args, const TempDir &dir) {
  const std::string out_path = dir.File("cmd_stdout.txt");
  const std::string cmd =
      std::string(MIXSWITCH_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CommandResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  result.stdout_text.assign((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  return result;
}

}  // namespace

TEST_CASE("cli pipeline: synth, mix, vad, score, switch, grid, cer") {
  TempDir dir("cli");
  auto f = [&](const std::string &name) { return dir.File(name); };

  CHECK(Run("synth --kind sine --seconds 4 --active-seconds 3.5 --freq 523 --out " +
                f("t.wav"),
            dir).exit_code == 0);
  CHECK(Run("synth --kind sine --seconds 4 --active-seconds 3.5 --freq 311 --out " +
                f("i.wav"),
            dir).exit_code == 0);
  CHECK(Run("synth --kind noise --seconds 6 --seed 5 --out " + f("n.wav"), dir)
            .exit_code == 0);

  {
    std::ofstream m(f("manifest.jsonl"));
    m << R"({"utt_id":"u1","target":")" << f("t.wav") << R"(","interferer":")"
      << f("i.wav") << R"(","noise":")" << f("n.wav")
      << R"(","sir_db":12,"snr_db":4,"seed":1})" << "\n";
  }
  CHECK(Run("mix --manifest " + f("manifest.jsonl") + " --out-dir " + f("out"), dir)
            .exit_code == 0);
  CHECK(mixswitch::LoadWav(f("out") + "/u1_mixture.wav").NumSamples() == 64000);

  CHECK(Run("vad --target " + f("out") + "/u1_target.wav --interferer " + f("out") +
                "/u1_interferer.wav --out " + f("tl.json"),
            dir).exit_code == 0);

  const CommandResult score =
      Run("score --mixture " + f("out") + "/u1_mixture.wav --timeline " + f("tl.json") +
              " --clue-stem " + f("out") + "/u1_interferer.wav"
              " --extractor.artifact_db inf --utt-id u1 --out " + f("score.jsonl"),
          dir);
  CHECK(score.exit_code == 0);

  const CommandResult decision =
      Run("switch --scores " + f("score.jsonl") + " --lambda 10", dir);
  CHECK(decision.exit_code == 0);
  // f is near 12 - 4 = 8 dB, below the 10 dB threshold.
  CHECK(decision.stdout_text.find("\"choice\":\"enhanced\"") != std::string::npos);

  const CommandResult selected =
      Run("switch --f-db 15 --lambda 10 --mixture " + f("out") +
              "/u1_mixture.wav --enhanced " + f("out") + "/u1_target.wav --out " +
              f("sel.wav"),
          dir);
  CHECK(selected.exit_code == 0);
  CHECK(mixswitch::LoadWav(f("sel.wav")).samples ==
        mixswitch::LoadWav(f("out") + "/u1_mixture.wav").samples);

  {
    std::ofstream m(f("grid_manifest.jsonl"));
    m << R"({"utt_id":"u1","target":")" << f("t.wav") << R"(","interferer":")"
      << f("i.wav") << R"(","seed":1})" << "\n";
  }
  const CommandResult grid =
      Run("grid --manifest " + f("grid_manifest.jsonl") +
              " --sir 0,10,20 --snr 10,0 --noise white=" + f("n.wav") +
              " --score-source ground_truth --csv " + f("report.csv"), dir);
  CHECK(grid.exit_code == 0);
  CHECK(grid.stdout_text.find("noise: white") != std::string::npos);

  const CommandResult cer = Run("cer --ref abc --hyp axcd", dir);
  CHECK(cer.exit_code == 0);
  CHECK(cer.stdout_text.find("0.666667") == 0);
}

TEST_CASE("cli calibrate recovers the designed threshold") {
  TempDir dir("cli_cal");
  const std::string csv = dir.File("records.csv");
  {
    std::ofstream f(csv);
    f << "utt_id,f_db,cer_enhanced,cer_mixture\n";
    for (int i = 0; i < 20; ++i) {
      const double fv = 0.5 + i;
      if (fv < 10.0) {
        f << "u" << i << "," << fv << ",0.1,0.5\n";
      } else {
        f << "u" << i << "," << fv << ",0.5,0.1\n";
      }
    }
  }
  const CommandResult result =
      Run("calibrate --records " + csv + " --grid-min 0 --grid-max 20 --grid-step 1",
          dir);
  CHECK(result.exit_code == 0);
  CHECK(result.stdout_text.find("\"lambda_db\":10.0") != std::string::npos);
}

TEST_CASE("cli exit codes distinguish fatal and partial failures") {
  TempDir dir("cli_exit");
  // Fatal: missing manifest.
  CHECK(Run("mix --manifest " + dir.File("nope.jsonl") + " --out-dir " + dir.File("o"),
            dir).exit_code == 1);

  // Partial: one good row, one row pointing at a missing wav.
  CHECK(Run("synth --kind sine --seconds 1 --out " + dir.File("t.wav"), dir)
            .exit_code == 0);
  CHECK(Run("synth --kind noise --seconds 1 --seed 2 --out " + dir.File("n.wav"), dir)
            .exit_code == 0);
  {
    std::ofstream m(dir.File("m.jsonl"));
    m << R"({"utt_id":"ok","target":")" << dir.File("t.wav") << R"(","interferer":")"
      << dir.File("t.wav") << R"(","noise":")" << dir.File("n.wav")
      << R"(","sir_db":0,"snr_db":10,"seed":1})" << "\n";
    m << R"({"utt_id":"bad","target":")" << dir.File("gone.wav") << R"(","interferer":")"
      << dir.File("t.wav") << R"(","noise":")" << dir.File("n.wav")
      << R"(","sir_db":0,"snr_db":10,"seed":1})" << "\n";
  }
  CHECK(Run("mix --manifest " + dir.File("m.jsonl") + " --out-dir " + dir.File("o2"),
            dir).exit_code == 2);
}
