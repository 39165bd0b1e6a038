// src/mix.cc

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

#include "mixswitch/mix.h"

#include <stdexcept>
#include <string>

#include "mixswitch/kernels.h"
#include "mixswitch/rng.h"
#include "mixswitch/wav.h"

namespace mixswitch {

namespace {

void CheckRate(const AudioBuffer &b, const char *what) {
  if (b.sample_rate != kSampleRate) {
    throw std::domain_error(std::string("rate mismatch: ") + what + " is not 16 kHz");
  }
}

// Interferer alignment: pad with trailing zeros or truncate. Utterances are
// never looped.
AudioBuffer AlignInterferer(const AudioBuffer &interferer, size_t target_len) {
  AudioBuffer out;
  out.sample_rate = interferer.sample_rate;
  out.samples.assign(target_len, 0.0);
  const size_t n = std::min(target_len, interferer.NumSamples());
  std::copy(interferer.samples.begin(), interferer.samples.begin() + n,
            out.samples.begin());
  return out;
}

// Noise window: read circularly starting at `offset`, so a short noise loops
// seamlessly from its start and a long one is truncated.
AudioBuffer CutNoise(const AudioBuffer &noise, size_t target_len, size_t offset) {
  AudioBuffer out;
  out.sample_rate = noise.sample_rate;
  out.samples.resize(target_len);
  const size_t n = noise.NumSamples();
  for (size_t i = 0; i < target_len; ++i) {
    out.samples[i] = noise.samples[(offset + i) % n];
  }
  return out;
}

}  // namespace

MixtureBundle MixStems(const AudioBuffer &target, const AudioBuffer &interferer,
                       const AudioBuffer &noise, const MixtureSpec &spec) {
  if (!std::isfinite(spec.sir_db) || !std::isfinite(spec.snr_db)) {
    throw std::domain_error("invalid score");
  }
  CheckRate(target, "target");
  CheckRate(interferer, "interferer");
  CheckRate(noise, "noise");
  if (target.Empty()) throw std::domain_error("empty power region");
  if (noise.Empty() || interferer.Empty()) throw std::domain_error("silent source");

  MixtureBundle bundle;
  bundle.target = target;

  bundle.interferer = AlignInterferer(interferer, target.NumSamples());

  size_t offset = 0;
  if (spec.noise_offset.has_value()) {
    offset = static_cast<size_t>(*spec.noise_offset % noise.NumSamples());
  } else {
    Rng rng(spec.seed);
    offset = static_cast<size_t>(rng.NextU64() % noise.NumSamples());
  }
  bundle.noise = CutNoise(noise, target.NumSamples(), offset);

  // Gains are computed on the aligned stems, so the ratios measured on the
  // final buffers land exactly on the spec values.
  ApplyGain(&bundle.interferer, GainForRatio(target, bundle.interferer, spec.sir_db));
  ApplyGain(&bundle.noise, GainForRatio(target, bundle.noise, spec.snr_db));

  bundle.mixture.sample_rate = kSampleRate;
  bundle.mixture.samples.resize(target.NumSamples());
  kernels::AddThree(bundle.target.samples, bundle.interferer.samples,
                    bundle.noise.samples, bundle.mixture.samples);

  bundle.true_sir_db = PowerRatioDb(Power(bundle.target), Power(bundle.interferer));
  bundle.true_snr_db = PowerRatioDb(Power(bundle.target), Power(bundle.noise));
  CheckFinite(bundle.mixture, "mixture");
  return bundle;
}

MixtureBundle Mix(const MixtureSpec &spec) {
  const AudioBuffer target = LoadWav(spec.target_source);
  const AudioBuffer interferer = LoadWav(spec.interferer_source);
  const AudioBuffer noise = LoadWav(spec.noise_source);
  return MixStems(target, interferer, noise, spec);
}

}  // namespace mixswitch
