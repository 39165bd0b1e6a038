// tools/mixswitch.cc

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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mixswitch/asr_hook.h"
#include "mixswitch/cer.h"
#include "mixswitch/grid.h"
#include "mixswitch/manifest.h"
#include "mixswitch/mix.h"
#include "mixswitch/score.h"
#include "mixswitch/switching.h"
#include "mixswitch/synth.h"
#include "mixswitch/vad.h"
#include "mixswitch/wav.h"

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using namespace mixswitch;

int g_exit_code = 0;

WavFormat ParseFormat(const std::string &name) {
  if (name == "float32") return WavFormat::kFloat32;
  if (name == "pcm16") return WavFormat::kPcm16;
  throw std::runtime_error("unknown wav format: " + name);
}

std::string ReadTextFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

void WriteTextFile(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct ExtractorFlags {
  std::string kind = "oracle";
  double artifact_db = 20.0;
  double gate_threshold_db = 15.0;
  uint64_t seed = 0;

  void Register(CLI::App *cmd) {
    cmd->add_option("--extractor.kind", kind, "oracle | spectral_gate");
    cmd->add_option("--extractor.artifact_db", artifact_db,
                    "oracle artifact-to-signal ratio in dB; inf disables");
    cmd->add_option("--extractor.gate_threshold_db", gate_threshold_db,
                    "spectral gate attenuation depth in dB");
    cmd->add_option("--extractor.seed", seed, "artifact noise seed");
  }
  ExtractorSpec Spec() const {
    ExtractorSpec spec;
    spec.kind = ExtractorKindFromString(kind);
    spec.artifact_db = artifact_db;
    spec.gate_threshold_db = gate_threshold_db;
    spec.seed = seed;
    return spec;
  }
};

struct VadFlags {
  VadConfig config;
  void Register(CLI::App *cmd) {
    cmd->add_option("--frame-ms", config.frame_ms, "VAD frame length in ms");
    cmd->add_option("--threshold-db", config.threshold_db,
                    "activity threshold, dB below peak frame power");
    cmd->add_option("--hangover", config.hangover_frames,
                    "fill inactive gaps shorter than this many frames");
  }
};

void AddSynth(CLI::App &app) {
  auto cmd = app.add_subcommand("synth", "generate synthetic test material");
  struct SynthOpts {
    std::string kind = "sine";
    double seconds = 4.0;
    double active_seconds = -1.0;
    double freq = 440.0;
    double amplitude = 0.3;
    double rms = 0.05;
    uint64_t seed = 0;
    std::string out;
    std::string format = "float32";
  };
  auto opts = std::make_shared<SynthOpts>();
  cmd->add_option("--kind", opts->kind, "sine | noise")->capture_default_str();
  cmd->add_option("--seconds", opts->seconds, "total duration");
  cmd->add_option("--active-seconds", opts->active_seconds,
                  "sine: active span from t=0 (default: whole buffer)");
  cmd->add_option("--freq", opts->freq, "sine frequency in Hz");
  cmd->add_option("--amplitude", opts->amplitude, "sine amplitude");
  cmd->add_option("--rms", opts->rms, "noise RMS");
  cmd->add_option("--seed", opts->seed, "noise seed");
  cmd->add_option("--out", opts->out, "output wav path")->required();
  cmd->add_option("--format", opts->format, "float32 | pcm16");
  cmd->callback([opts]() {
    const double active =
        opts->active_seconds < 0 ? opts->seconds : opts->active_seconds;
    AudioBuffer buffer;
    if (opts->kind == "sine") {
      buffer = SineBurst(opts->seconds, active, opts->freq, opts->amplitude);
    } else if (opts->kind == "noise") {
      buffer = WhiteNoise(opts->seconds, opts->seed, opts->rms);
    } else {
      throw std::runtime_error("unknown synth kind: " + opts->kind);
    }
    SaveWav(buffer, opts->out, ParseFormat(opts->format));
  });
}

void AddMix(CLI::App &app) {
  auto cmd = app.add_subcommand("mix", "realize a JSON-lines mixture manifest");
  struct MixOpts {
    std::string manifest;
    std::string out_dir;
    std::string metadata;
    std::string format = "float32";
  };
  auto opts = std::make_shared<MixOpts>();
  cmd->add_option("--manifest", opts->manifest, "JSONL manifest")->required();
  cmd->add_option("--out-dir", opts->out_dir, "output directory")->required();
  cmd->add_option("--metadata", opts->metadata,
                  "bundle metadata JSONL (default <out-dir>/bundles.jsonl)");
  cmd->add_option("--format", opts->format, "float32 | pcm16");
  cmd->callback([opts]() {
    const WavFormat format = ParseFormat(opts->format);
    const std::vector<ManifestRow> rows = LoadMixManifest(opts->manifest);
    std::filesystem::create_directories(opts->out_dir);
    const std::string metadata_path =
        opts->metadata.empty()
            ? (std::filesystem::path(opts->out_dir) / "bundles.jsonl").string()
            : opts->metadata;
    std::ofstream metadata(metadata_path, std::ios::trunc);
    if (!metadata) throw std::runtime_error("cannot write " + metadata_path);

    size_t n_failed = 0;
    for (const ManifestRow &row : rows) {
      try {
        const MixtureBundle bundle = Mix(row.spec);
        nlohmann::json j;
        j["utt_id"] = row.utt_id;
        for (const auto &[stem_name, buffer] :
             {std::pair<const char *, const AudioBuffer &>{"mixture", bundle.mixture},
              {"target", bundle.target},
              {"interferer", bundle.interferer},
              {"noise", bundle.noise}}) {
          const std::string path =
              (std::filesystem::path(opts->out_dir) / (row.utt_id + "_" + stem_name + ".wav"))
                  .string();
          SaveWav(buffer, path, format);
          j[stem_name] = path;
        }
        j["sir_db"] = row.spec.sir_db;
        j["snr_db"] = row.spec.snr_db;
        j["true_sir_db"] = bundle.true_sir_db;
        j["true_snr_db"] = bundle.true_snr_db;
        j["seed"] = row.spec.seed;
        metadata << j.dump() << '\n';
      } catch (const std::exception &e) {
        ++n_failed;
        std::cerr << "mix: " << row.utt_id << ": " << e.what() << '\n';
      }
    }
    std::cerr << "mix: wrote " << (rows.size() - n_failed) << "/" << rows.size()
              << " bundles to " << opts->out_dir << '\n';
    if (n_failed > 0) g_exit_code = 2;
  });
}

void AddVad(CLI::App &app) {
  auto cmd = app.add_subcommand("vad", "label joint speaker activity of clean stems");
  struct VadOpts {
    std::string target;
    std::string interferer;
    std::string out;
    VadFlags vad;
  };
  auto opts = std::make_shared<VadOpts>();
  cmd->add_option("--target", opts->target, "clean target stem wav")->required();
  cmd->add_option("--interferer", opts->interferer, "clean interferer stem wav")
      ->required();
  cmd->add_option("--out", opts->out, "timeline JSON path (default stdout)");
  opts->vad.Register(cmd);
  cmd->callback([opts]() {
    const ActivityTimeline timeline =
        JoinTimeline(DetectActivity(LoadWav(opts->target), opts->vad.config),
                     DetectActivity(LoadWav(opts->interferer), opts->vad.config),
                     opts->vad.config.frame_ms);
    const std::string json_text = TimelineToJson(timeline);
    if (opts->out.empty()) {
      std::cout << json_text << '\n';
    } else {
      WriteTextFile(opts->out, json_text + "\n");
    }
    try {
      std::cerr << "vad: overlap_ratio=" << OverlapRatio(timeline) << '\n';
    } catch (const std::domain_error &) {
      std::cerr << "vad: no target speech\n";
    }
  });
}

void AddScore(CLI::App &app) {
  auto cmd = app.add_subcommand(
      "score", "switching score: estimated from the mixture, or from stems");
  struct ScoreOpts {
    std::string utt_id = "utt0000";
    bool ground_truth = false;
    std::string mixture, timeline, clue_stem, clue_enroll;
    std::string target, interferer, noise;
    ExtractorFlags extractor;
    int min_noise_frames = 5;
    std::string zero_noise = "error";
    double clamp_db = -120.0;
    std::string out;
  };
  auto opts = std::make_shared<ScoreOpts>();
  cmd->add_option("--utt-id", opts->utt_id, "utterance id for the output line");
  cmd->add_flag("--ground-truth", opts->ground_truth,
                "compute from clean stems instead of estimating");
  cmd->add_option("--mixture", opts->mixture, "observed mixture wav (estimated mode)");
  cmd->add_option("--timeline", opts->timeline, "timeline JSON from `vad`");
  cmd->add_option("--clue-stem", opts->clue_stem,
                  "interferer oracle stem (oracle extractor)");
  cmd->add_option("--clue-enroll", opts->clue_enroll,
                  "interferer enrollment wav (spectral gate)");
  cmd->add_option("--target", opts->target, "target stem (ground-truth mode)");
  cmd->add_option("--interferer", opts->interferer, "interferer stem (ground-truth mode)");
  cmd->add_option("--noise", opts->noise, "noise stem (ground-truth mode)");
  opts->extractor.Register(cmd);
  cmd->add_option("--min-noise-frames", opts->min_noise_frames,
                  "minimum Neither frames for the noise estimate");
  cmd->add_option("--zero-noise", opts->zero_noise, "error | clamp");
  cmd->add_option("--clamp-db", opts->clamp_db, "score clamp when noise is silent");
  cmd->add_option("--out", opts->out, "output path (default stdout)");
  cmd->callback([opts]() {
    SwitchScore score;
    if (opts->ground_truth) {
      if (opts->target.empty() || opts->interferer.empty() || opts->noise.empty()) {
        throw std::runtime_error(
            "ground-truth mode needs --target, --interferer and --noise");
      }
      MixtureBundle bundle;
      bundle.target = LoadWav(opts->target);
      bundle.interferer = LoadWav(opts->interferer);
      bundle.noise = LoadWav(opts->noise);
      const TrueRatios ratios = ComputeTrueRatios(bundle);
      score.f_db = ratios.f_db;
      score.interferer_power = Power(bundle.interferer);
      score.noise_power = Power(bundle.noise);
      score.noise_region_frames = 0;
      score.provenance = Provenance::kGroundTruth;
    } else {
      if (opts->mixture.empty() || opts->timeline.empty()) {
        throw std::runtime_error("estimated mode needs --mixture and --timeline");
      }
      SpeakerClue clue;
      clue.role = ClueRole::kInterferer;
      if (!opts->clue_stem.empty()) clue.oracle_stem = LoadWav(opts->clue_stem);
      if (!opts->clue_enroll.empty()) clue.enrollment = LoadWav(opts->clue_enroll);
      ScoreConfig config;
      config.min_noise_frames = opts->min_noise_frames;
      config.clamp_db = opts->clamp_db;
      if (opts->zero_noise == "clamp") {
        config.zero_noise = ZeroNoisePolicy::kClamp;
      } else if (opts->zero_noise != "error") {
        throw std::runtime_error("unknown zero-noise policy: " + opts->zero_noise);
      }
      score = EstimateScore(LoadWav(opts->mixture), clue, opts->extractor.Spec(),
                            TimelineFromJson(ReadTextFile(opts->timeline)), config);
    }
    const std::string line = ScoreToJson(opts->utt_id, score);
    if (opts->out.empty()) {
      std::cout << line << '\n';
    } else {
      WriteTextFile(opts->out, line + "\n");
    }
  });
}

void AddSwitch(CLI::App &app) {
  auto cmd = app.add_subcommand(
      "switch", "apply the threshold rule and select the ASR input branch");
  struct SwitchOpts {
    double lambda_db = kDefaultLambdaDb;
    std::optional<double> f_db;
    std::string scores;
    std::string mixture, enhanced, out;
    std::string utt_id = "utt0000";
    std::string format = "float32";
  };
  auto opts = std::make_shared<SwitchOpts>();
  cmd->add_option("--lambda", opts->lambda_db, "decision threshold in dB")
      ->capture_default_str();
  cmd->add_option("--f-db", opts->f_db, "single score value");
  cmd->add_option("--scores", opts->scores, "score JSONL from `score` (batch mode)");
  cmd->add_option("--mixture", opts->mixture, "observed mixture wav");
  cmd->add_option("--enhanced", opts->enhanced, "enhanced wav");
  cmd->add_option("--out", opts->out, "selected branch output wav");
  cmd->add_option("--utt-id", opts->utt_id, "utterance id (single mode)");
  cmd->add_option("--format", opts->format, "float32 | pcm16");
  cmd->callback([opts]() {
    if (!opts->scores.empty()) {
      std::ifstream in(opts->scores);
      if (!in) throw std::runtime_error("cannot open " + opts->scores);
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        const nlohmann::json j = nlohmann::json::parse(line);
        SwitchScore score;
        score.f_db = j.at("f_db").get<double>();
        score.provenance = j.value("provenance", "estimated") == "ground_truth"
                               ? Provenance::kGroundTruth
                               : Provenance::kEstimated;
        const SwitchDecision decision =
            MakeDecision(j.value("utt_id", "utt0000"), score, opts->lambda_db);
        std::cout << DecisionToJson(decision) << '\n';
      }
      return;
    }
    if (!opts->f_db.has_value()) {
      throw std::runtime_error("need --f-db or --scores");
    }
    SwitchScore score;
    score.f_db = *opts->f_db;
    const SwitchDecision decision = MakeDecision(opts->utt_id, score, opts->lambda_db);
    std::cout << DecisionToJson(decision) << '\n';
    if (!opts->out.empty()) {
      if (opts->mixture.empty() || opts->enhanced.empty()) {
        throw std::runtime_error("--out needs --mixture and --enhanced");
      }
      const AudioBuffer mixture = LoadWav(opts->mixture);
      const AudioBuffer enhanced = LoadWav(opts->enhanced);
      SaveWav(SelectInput(mixture, enhanced, decision), opts->out,
              ParseFormat(opts->format));
    }
  });
}

void AddCalibrate(CLI::App &app) {
  auto cmd = app.add_subcommand(
      "calibrate", "pick the threshold minimizing total CER on a dev set");
  struct CalibrateOpts {
    std::string records;
    double grid_min = -20.0, grid_max = 20.0, grid_step = 1.0;
  };
  auto opts = std::make_shared<CalibrateOpts>();
  cmd->add_option("--records", opts->records,
                  "CSV with header utt_id,f_db,cer_enhanced,cer_mixture")
      ->required();
  cmd->add_option("--grid-min", opts->grid_min, "smallest candidate lambda");
  cmd->add_option("--grid-max", opts->grid_max, "largest candidate lambda");
  cmd->add_option("--grid-step", opts->grid_step, "candidate spacing");
  cmd->callback([opts]() {
    if (opts->grid_step <= 0 || opts->grid_max < opts->grid_min) {
      throw std::runtime_error("bad lambda grid");
    }
    std::vector<double> grid;
    for (double v = opts->grid_min; v <= opts->grid_max + 1e-12; v += opts->grid_step) {
      grid.push_back(v);
    }
    const auto [lambda, total_cer] =
        CalibrateLambda(LoadCalibrationCsv(opts->records), grid);
    nlohmann::json j;
    j["lambda_db"] = lambda;
    j["total_cer"] = total_cer;
    std::cout << j.dump() << '\n';
  });
}

void AddGrid(CLI::App &app) {
  auto cmd = app.add_subcommand(
      "grid", "sweep SIR x SNR x noise type over a fixed utterance set");
  struct GridOpts {
    std::string manifest;
    std::vector<double> sir_list, snr_list;
    std::vector<std::string> noise_specs;
    ExtractorFlags extractor;
    VadFlags vad;
    double lambda_db = kDefaultLambdaDb;
    std::string score_source = "estimated";
    int min_noise_frames = 5;
    std::string zero_noise = "error";
    double clamp_db = -120.0;
    std::string asr_cmd;
    double asr_timeout = 600.0;
    std::string asr_normalizer = "none";
    int threads = 0;
    std::string workdir;
    std::string csv, jsonl;
    bool quiet = false;
  };
  auto opts = std::make_shared<GridOpts>();
  cmd->add_option("--manifest", opts->manifest, "JSONL utterance manifest")->required();
  cmd->add_option("--sir", opts->sir_list, "SIR values in dB")
      ->required()
      ->delimiter(',');
  cmd->add_option("--snr", opts->snr_list, "SNR values in dB")
      ->required()
      ->delimiter(',');
  cmd->add_option("--noise", opts->noise_specs, "noise type as name=path, repeatable")
      ->required();
  opts->extractor.Register(cmd);
  opts->vad.Register(cmd);
  cmd->add_option("--lambda", opts->lambda_db, "decision threshold in dB")
      ->capture_default_str();
  cmd->add_option("--score-source", opts->score_source, "estimated | ground_truth");
  cmd->add_option("--min-noise-frames", opts->min_noise_frames,
                  "minimum Neither frames for the noise estimate");
  cmd->add_option("--zero-noise", opts->zero_noise, "error | clamp");
  cmd->add_option("--clamp-db", opts->clamp_db, "score clamp when noise is silent");
  cmd->add_option("--asr-cmd", opts->asr_cmd,
                  "external ASR command with one {audio} placeholder");
  cmd->add_option("--asr-timeout", opts->asr_timeout, "ASR timeout in seconds");
  cmd->add_option("--asr-normalizer", opts->asr_normalizer, "none | strip_whitespace");
  cmd->add_option("--threads", opts->threads, "worker limit (0 = OpenMP default)");
  cmd->add_option("--workdir", opts->workdir, "scratch dir for ASR temp files");
  cmd->add_option("--csv", opts->csv, "write per-cell CSV here");
  cmd->add_option("--jsonl", opts->jsonl, "write per-utterance JSONL here");
  cmd->add_flag("--quiet", opts->quiet, "suppress the text table");
  cmd->callback([opts]() {
    GridConfig config;
    config.sir_list = opts->sir_list;
    config.snr_list = opts->snr_list;
    for (const std::string &spec : opts->noise_specs) {
      const size_t eq = spec.find('=');
      if (eq == std::string::npos) {
        throw std::runtime_error("--noise expects name=path, got: " + spec);
      }
      config.noise_types.emplace_back(spec.substr(0, eq), spec.substr(eq + 1));
    }
    config.extractor = opts->extractor.Spec();
    config.vad = opts->vad.config;
    config.lambda_db = opts->lambda_db;
    if (opts->score_source == "ground_truth") {
      config.score_source = ScoreSource::kGroundTruth;
    } else if (opts->score_source != "estimated") {
      throw std::runtime_error("unknown score source: " + opts->score_source);
    }
    config.score.min_noise_frames = opts->min_noise_frames;
    config.score.clamp_db = opts->clamp_db;
    if (opts->zero_noise == "clamp") {
      config.score.zero_noise = ZeroNoisePolicy::kClamp;
    } else if (opts->zero_noise != "error") {
      throw std::runtime_error("unknown zero-noise policy: " + opts->zero_noise);
    }
    if (!opts->asr_cmd.empty()) {
      AsrHook hook;
      hook.command_template = opts->asr_cmd;
      hook.timeout_s = opts->asr_timeout;
      if (opts->asr_normalizer == "strip_whitespace") {
        hook.normalizer = TranscriptNormalizer::kStripWhitespace;
      } else if (opts->asr_normalizer != "none") {
        throw std::runtime_error("unknown normalizer: " + opts->asr_normalizer);
      }
      config.hook = hook;
    }
    config.threads = opts->threads;
    config.workdir = opts->workdir.empty()
                         ? (std::filesystem::temp_directory_path() / "mixswitch_grid").string()
                         : opts->workdir;

    const GridReport report = RunGrid(LoadGridManifest(opts->manifest), config);
    if (!opts->csv.empty()) WriteTextFile(opts->csv, ReportToCsv(report));
    if (!opts->jsonl.empty()) WriteTextFile(opts->jsonl, RowsToJsonLines(report));
    if (!opts->quiet) std::cout << ReportToTable(report);
    if (report.n_failed > 0) {
      std::cerr << "grid: " << report.n_failed << " utterance rows failed\n";
      g_exit_code = 2;
    }
  });
}

void AddCer(CLI::App &app) {
  auto cmd = app.add_subcommand("cer", "character error rate of a hypothesis");
  struct CerOpts {
    std::string ref, hyp, ref_file, hyp_file;
  };
  auto opts = std::make_shared<CerOpts>();
  cmd->add_option("--ref", opts->ref, "reference text");
  cmd->add_option("--hyp", opts->hyp, "hypothesis text");
  cmd->add_option("--ref-file", opts->ref_file, "reference text file");
  cmd->add_option("--hyp-file", opts->hyp_file, "hypothesis text file");
  cmd->callback([opts]() {
    const std::string ref =
        opts->ref_file.empty() ? opts->ref : ReadTextFile(opts->ref_file);
    const std::string hyp =
        opts->hyp_file.empty() ? opts->hyp : ReadTextFile(opts->hyp_file);
    std::printf("%.6f\n", Cer(ref, hyp));
  });
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"per-utterance switching between an observed mixture and extracted "
               "target speech as the ASR input, driven by estimated SIR/SNR"};
  app.require_subcommand(1);
  AddSynth(app);
  AddMix(app);
  AddVad(app);
  AddScore(app);
  AddSwitch(app);
  AddCalibrate(app);
  AddGrid(app);
  AddCer(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return g_exit_code;
}
