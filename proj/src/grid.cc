// src/grid.cc

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

#include "mixswitch/grid.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "mixswitch/cer.h"
#include "mixswitch/kernels.h"
#include "mixswitch/mix.h"
#include "mixswitch/wav.h"

#include "json.hpp"

namespace mixswitch {

namespace {

struct CellKey {
  size_t noise_index;
  size_t sir_index;
  size_t snr_index;
};

struct LoadedSource {
  std::optional<AudioBuffer> buffer;
  std::string error;
};

using SourceCache = std::unordered_map<std::string, LoadedSource>;

void Preload(SourceCache *cache, const std::string &path) {
  if (path.empty() || cache->count(path) != 0) return;
  LoadedSource entry;
  try {
    entry.buffer = LoadWav(path);
  } catch (const std::exception &e) {
    entry.error = e.what();
  }
  (*cache)[path] = std::move(entry);
}

const AudioBuffer &Fetch(const SourceCache &cache, const std::string &path) {
  const LoadedSource &entry = cache.at(path);
  if (!entry.buffer.has_value()) throw std::runtime_error(entry.error);
  return *entry.buffer;
}

SpeakerClue MakeClue(ClueRole role, const ExtractorSpec &extractor,
                     const MixtureBundle &bundle, const SourceCache &cache,
                     const UttEntry &utt) {
  SpeakerClue clue;
  clue.role = role;
  if (extractor.kind == ExtractorKind::kOracle) {
    clue.oracle_stem = role == ClueRole::kTarget ? bundle.target : bundle.interferer;
  } else {
    // Enrollment falls back to the source stem when none was given.
    const std::string &enroll_path =
        role == ClueRole::kTarget
            ? (utt.target_enroll.empty() ? utt.target : utt.target_enroll)
            : (utt.interferer_enroll.empty() ? utt.interferer : utt.interferer_enroll);
    clue.enrollment = Fetch(cache, enroll_path);
  }
  return clue;
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string FormatOptional(const std::optional<double> &v) {
  return v.has_value() ? FormatDouble(*v) : std::string();
}

std::optional<double> MeanOf(const std::vector<double> &values) {
  if (values.empty()) return std::nullopt;
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  return sum / static_cast<double>(values.size());
}

}  // namespace

GridReport RunGrid(const std::vector<UttEntry> &utts, const GridConfig &config) {
  if (utts.empty()) throw std::domain_error("empty manifest");
  if (config.sir_list.empty() || config.snr_list.empty() || config.noise_types.empty()) {
    throw std::domain_error("empty grid axis");
  }

  // All sources come in once, up front; rows referencing a bad file record
  // its error instead of aborting the sweep.
  SourceCache cache;
  for (const UttEntry &u : utts) {
    Preload(&cache, u.target);
    Preload(&cache, u.interferer);
    if (config.extractor.kind == ExtractorKind::kSpectralGate) {
      Preload(&cache, u.target_enroll.empty() ? u.target : u.target_enroll);
      Preload(&cache, u.interferer_enroll.empty() ? u.interferer : u.interferer_enroll);
    }
  }
  for (const auto &[name, path] : config.noise_types) Preload(&cache, path);

  std::vector<CellKey> cells;
  for (size_t ni = 0; ni < config.noise_types.size(); ++ni) {
    for (size_t si = 0; si < config.sir_list.size(); ++si) {
      for (size_t vi = 0; vi < config.snr_list.size(); ++vi) {
        cells.push_back({ni, si, vi});
      }
    }
  }

  const size_t n_tasks = cells.size() * utts.size();
  std::vector<UttResult> results(n_tasks);

  const int n_threads = config.threads > 0 ? config.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(n_threads)
  for (long t = 0; t < static_cast<long>(n_tasks); ++t) {
    const size_t cell_index = static_cast<size_t>(t) / utts.size();
    const size_t utt_index = static_cast<size_t>(t) % utts.size();
    const CellKey &key = cells[cell_index];
    const UttEntry &utt = utts[utt_index];

    UttResult &row = results[static_cast<size_t>(t)];
    row.utt_id = utt.utt_id;
    row.noise_type = config.noise_types[key.noise_index].first;
    row.sir_db = config.sir_list[key.sir_index];
    row.snr_db = config.snr_list[key.snr_index];

    try {
      MixtureSpec spec;
      spec.sir_db = row.sir_db;
      spec.snr_db = row.snr_db;
      spec.seed = utt.seed;
      spec.noise_offset = utt.noise_offset;
      const MixtureBundle bundle =
          MixStems(Fetch(cache, utt.target), Fetch(cache, utt.interferer),
                   Fetch(cache, config.noise_types[key.noise_index].second), spec);

      row.f_true_db = ComputeTrueRatios(bundle).f_db;

      const ActivityTimeline timeline =
          JoinTimeline(DetectActivity(bundle.target, config.vad),
                       DetectActivity(bundle.interferer, config.vad),
                       config.vad.frame_ms);
      try {
        row.overlap_ratio = OverlapRatio(timeline);
      } catch (const std::domain_error &) {
        row.overlap_ratio = 0.0;
      }

      // Substreams so the two extraction passes of one row do not share
      // artifact noise, while staying identical across cells and runs.
      ExtractorSpec interferer_extractor = config.extractor;
      interferer_extractor.seed = kernels::MixSeed(config.extractor.seed,
                                                   kernels::MixSeed(utt.seed, 1));
      ExtractorSpec target_extractor = config.extractor;
      target_extractor.seed = kernels::MixSeed(config.extractor.seed,
                                               kernels::MixSeed(utt.seed, 2));

      if (config.score_source == ScoreSource::kGroundTruth) {
        // Mixing pins measured ratios to the spec values, so the nominal
        // difference is the cell's true score; powers are stored consistent
        // with it.
        SwitchScore score;
        score.provenance = Provenance::kGroundTruth;
        score.f_db = row.sir_db - row.snr_db;
        score.interferer_power = Power(bundle.interferer);
        score.noise_power =
            score.interferer_power * std::pow(10.0, score.f_db / 10.0);
        score.noise_region_frames = 0;
        row.score = score;
      } else {
        const SpeakerClue clue = MakeClue(ClueRole::kInterferer, interferer_extractor,
                                          bundle, cache, utt);
        row.score = EstimateScore(bundle.mixture, clue, interferer_extractor, timeline,
                                  config.score);
      }

      row.choice = Decide(row.score.f_db, config.lambda_db);

      if (config.hook.has_value() && !utt.text.empty()) {
        const SpeakerClue target_clue =
            MakeClue(ClueRole::kTarget, target_extractor, bundle, cache, utt);
        const AudioBuffer enhanced =
            Extract(bundle.mixture, target_clue, target_extractor);
        const std::string hyp_mixture =
            RunAsr(*config.hook, bundle.mixture, config.workdir);
        const std::string hyp_enhanced = RunAsr(*config.hook, enhanced, config.workdir);
        row.cer_mixture = Cer(utt.text, hyp_mixture);
        row.cer_enhanced = Cer(utt.text, hyp_enhanced);
        row.cer_switched = row.choice == InputChoice::kMixture ? row.cer_mixture
                                                               : row.cer_enhanced;
      }
    } catch (const std::exception &e) {
      row.error = e.what();
    }
  }

  // Deterministic ordered reduction: rows sorted inside each cell before the
  // fold, so the aggregates do not depend on scheduling.
  GridReport report;
  report.rows.reserve(n_tasks);
  for (size_t c = 0; c < cells.size(); ++c) {
    std::vector<size_t> order(utts.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return results[c * utts.size() + a].utt_id < results[c * utts.size() + b].utt_id;
    });

    GridCell cell;
    cell.noise_type = config.noise_types[cells[c].noise_index].first;
    cell.sir_db = config.sir_list[cells[c].sir_index];
    cell.snr_db = config.snr_list[cells[c].snr_index];

    size_t n_mixture = 0;
    double f_error_sum = 0.0;
    std::vector<double> cers_enhanced, cers_mixture, cers_switched;
    for (size_t o : order) {
      const UttResult &row = results[c * utts.size() + o];
      report.rows.push_back(row);
      if (!row.error.empty()) {
        ++cell.n_failed;
        ++report.n_failed;
        continue;
      }
      ++cell.n_utts;
      if (row.choice == InputChoice::kMixture) ++n_mixture;
      f_error_sum += std::abs(row.score.f_db - row.f_true_db);
      if (row.cer_enhanced.has_value()) cers_enhanced.push_back(*row.cer_enhanced);
      if (row.cer_mixture.has_value()) cers_mixture.push_back(*row.cer_mixture);
      if (row.cer_switched.has_value()) cers_switched.push_back(*row.cer_switched);
    }
    if (cell.n_utts > 0) {
      cell.mixture_chosen_fraction =
          static_cast<double>(n_mixture) / static_cast<double>(cell.n_utts);
      cell.mean_f_error_db = f_error_sum / static_cast<double>(cell.n_utts);
    }
    cell.cer_enhanced = MeanOf(cers_enhanced);
    cell.cer_mixture = MeanOf(cers_mixture);
    cell.cer_switched = MeanOf(cers_switched);
    if (cell.cer_enhanced.has_value() && cell.cer_mixture.has_value() &&
        *cell.cer_mixture > 0.0) {
      cell.rel_extract_gain =
          (*cell.cer_mixture - *cell.cer_enhanced) / *cell.cer_mixture;
    }
    if (cell.cer_enhanced.has_value() && cell.cer_switched.has_value() &&
        *cell.cer_enhanced > 0.0) {
      cell.rel_switch_gain =
          (*cell.cer_enhanced - *cell.cer_switched) / *cell.cer_enhanced;
    }
    report.cells.push_back(std::move(cell));
  }
  return report;
}

std::string ReportToCsv(const GridReport &report) {
  std::ostringstream out;
  out << "noise_type,sir_db,snr_db,n_utts,n_failed,mixture_fraction,"
         "mean_f_error_db,cer_enhanced,cer_mixture,cer_switched,"
         "rel_extract_gain,rel_switch_gain\n";
  for (const GridCell &cell : report.cells) {
    out << cell.noise_type << ',' << FormatDouble(cell.sir_db) << ','
        << FormatDouble(cell.snr_db) << ',' << cell.n_utts << ',' << cell.n_failed
        << ',' << FormatDouble(cell.mixture_chosen_fraction) << ','
        << FormatDouble(cell.mean_f_error_db) << ','
        << FormatOptional(cell.cer_enhanced) << ','
        << FormatOptional(cell.cer_mixture) << ','
        << FormatOptional(cell.cer_switched) << ','
        << FormatOptional(cell.rel_extract_gain) << ','
        << FormatOptional(cell.rel_switch_gain) << '\n';
  }
  return out.str();
}

std::string ReportToTable(const GridReport &report) {
  // One matrix per noise type, SIR rows by SNR columns, '*' where the
  // mixture branch won the majority.
  std::vector<std::string> noise_order;
  std::vector<double> sirs, snrs;
  for (const GridCell &cell : report.cells) {
    if (std::find(noise_order.begin(), noise_order.end(), cell.noise_type) ==
        noise_order.end()) {
      noise_order.push_back(cell.noise_type);
    }
    if (std::find(sirs.begin(), sirs.end(), cell.sir_db) == sirs.end()) {
      sirs.push_back(cell.sir_db);
    }
    if (std::find(snrs.begin(), snrs.end(), cell.snr_db) == snrs.end()) {
      snrs.push_back(cell.snr_db);
    }
  }

  auto find_cell = [&](const std::string &noise, double sir,
                       double snr) -> const GridCell * {
    for (const GridCell &cell : report.cells) {
      if (cell.noise_type == noise && cell.sir_db == sir && cell.snr_db == snr) {
        return &cell;
      }
    }
    return nullptr;
  };

  const bool have_cer = std::any_of(report.cells.begin(), report.cells.end(),
                                    [](const GridCell &c) {
                                      return c.cer_switched.has_value();
                                    });

  std::ostringstream out;
  char buf[64];
  for (const std::string &noise : noise_order) {
    out << "noise: " << noise << "  (mixture-chosen fraction"
        << (have_cer ? ", switched CER" : "") << ")\n";
    out << "  SIR\\SNR";
    for (double snr : snrs) {
      std::snprintf(buf, sizeof(buf), "%10.4g", snr);
      out << buf;
    }
    out << '\n';
    for (double sir : sirs) {
      std::snprintf(buf, sizeof(buf), "%9.4g", sir);
      out << buf;
      for (double snr : snrs) {
        const GridCell *cell = find_cell(noise, sir, snr);
        if (cell == nullptr || cell->n_utts == 0) {
          out << "         -";
          continue;
        }
        std::snprintf(buf, sizeof(buf), "%9.2f%c", cell->mixture_chosen_fraction,
                      cell->mixture_chosen_fraction >= 0.5 ? '*' : ' ');
        out << buf;
      }
      out << '\n';
      if (have_cer) {
        out << "         ";
        for (double snr : snrs) {
          const GridCell *cell = find_cell(noise, sir, snr);
          if (cell != nullptr && cell->cer_switched.has_value()) {
            std::snprintf(buf, sizeof(buf), "%10.3f", *cell->cer_switched);
            out << buf;
          } else {
            out << "         -";
          }
        }
        out << '\n';
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string RowsToJsonLines(const GridReport &report) {
  std::ostringstream out;
  for (const UttResult &row : report.rows) {
    nlohmann::json j;
    j["utt_id"] = row.utt_id;
    j["noise_type"] = row.noise_type;
    j["sir_db"] = row.sir_db;
    j["snr_db"] = row.snr_db;
    if (row.error.empty()) {
      j["f_db"] = row.score.f_db;
      j["f_true_db"] = row.f_true_db;
      j["provenance"] = ProvenanceName(row.score.provenance);
      j["p_i"] = row.score.interferer_power;
      j["p_n"] = row.score.noise_power;
      j["t_prime_frames"] = row.score.noise_region_frames;
      j["choice"] = ChoiceName(row.choice);
      j["overlap_ratio"] = row.overlap_ratio;
      if (row.cer_enhanced.has_value()) j["cer_enhanced"] = *row.cer_enhanced;
      if (row.cer_mixture.has_value()) j["cer_mixture"] = *row.cer_mixture;
      if (row.cer_switched.has_value()) j["cer_switched"] = *row.cer_switched;
    } else {
      j["error"] = row.error;
    }
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace mixswitch
