// src/score.cc

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

#include "mixswitch/score.h"

#include <cmath>
#include <stdexcept>

#include "mixswitch/kernels.h"

#include "json.hpp"

namespace mixswitch {

TrueRatios ComputeTrueRatios(const MixtureBundle &bundle) {
  const double p_s = Power(bundle.target);
  const double p_i = Power(bundle.interferer);
  const double p_n = Power(bundle.noise);
  TrueRatios r;
  r.sir_db = PowerRatioDb(p_s, p_i);
  r.snr_db = PowerRatioDb(p_s, p_n);
  r.f_db = PowerRatioDb(p_n, p_i);
  return r;
}

SwitchScore EstimateScore(const AudioBuffer &mixture, const SpeakerClue &interferer_clue,
                          const ExtractorSpec &extractor, const ActivityTimeline &timeline,
                          const ScoreConfig &config) {
  VadConfig frame_cfg;
  frame_cfg.frame_ms = timeline.frame_ms;
  const size_t frame_len = FrameSamples(frame_cfg);
  const size_t n_frames = timeline.NumFrames();
  if (n_frames == 0 || n_frames * frame_len > mixture.NumSamples()) {
    throw std::domain_error("mask length mismatch: timeline does not tile the mixture");
  }

  std::vector<uint8_t> neither_mask(n_frames, 0);
  std::vector<uint8_t> interferer_mask(n_frames, 0);
  size_t n_neither = 0;
  for (size_t f = 0; f < n_frames; ++f) {
    if (timeline.labels[f] == ActivityLabel::kNeither) {
      neither_mask[f] = 1;
      ++n_neither;
    }
    if (timeline.InterfererActive(f)) interferer_mask[f] = 1;
  }
  if (n_neither < static_cast<size_t>(config.min_noise_frames)) {
    throw std::domain_error("insufficient noise region");
  }

  // Noise: the raw mixture where both speakers are inactive.
  size_t noise_samples = 0;
  const double noise_sum = kernels::MaskedSumSquares(mixture.samples, neither_mask,
                                                     frame_len, &noise_samples);
  const double p_n = noise_sum / static_cast<double>(noise_samples);

  // Interference: extract it with its clue, measure where it is active.
  const AudioBuffer interferer_estimate = Extract(mixture, interferer_clue, extractor);
  size_t interferer_samples = 0;
  const double interferer_sum = kernels::MaskedSumSquares(
      interferer_estimate.samples, interferer_mask, frame_len, &interferer_samples);
  if (interferer_samples == 0) throw std::domain_error("silent interference estimate");
  const double p_i = interferer_sum / static_cast<double>(interferer_samples);
  if (p_i < kPowerFloor) throw std::domain_error("silent interference estimate");

  SwitchScore score;
  score.provenance = Provenance::kEstimated;
  score.interferer_power = p_i;
  score.noise_region_frames = n_neither;
  if (p_n < kPowerFloor) {
    if (config.zero_noise == ZeroNoisePolicy::kError) {
      throw std::domain_error("insufficient noise region: noise power below floor");
    }
    // Clamped: store the power the clamped score corresponds to, keeping
    // f_db == 10*log10(p_n/p_i) true as stored.
    score.f_db = config.clamp_db;
    score.noise_power = p_i * std::pow(10.0, config.clamp_db / 10.0);
  } else {
    score.noise_power = p_n;
    score.f_db = PowerRatioDb(p_n, p_i);
  }
  return score;
}

std::string ScoreToJson(const std::string &utt_id, const SwitchScore &score) {
  nlohmann::json j;
  j["utt_id"] = utt_id;
  j["f_db"] = score.f_db;
  j["provenance"] = ProvenanceName(score.provenance);
  j["p_i"] = score.interferer_power;
  j["p_n"] = score.noise_power;
  j["t_prime_frames"] = score.noise_region_frames;
  return j.dump();
}

std::string ProvenanceName(Provenance p) {
  return p == Provenance::kGroundTruth ? "ground_truth" : "estimated";
}

}  // namespace mixswitch
