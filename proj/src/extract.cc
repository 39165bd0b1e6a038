// src/extract.cc

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

#include "mixswitch/extract.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "mixswitch/kernels.h"
#include "mixswitch/rng.h"

namespace mixswitch {

namespace {

constexpr size_t kFftSize = 512;   // 32 ms at 16 kHz
constexpr size_t kHop = kFftSize / 2;
constexpr size_t kBins = kFftSize / 2 + 1;
constexpr double kMagFloor = 1e-12;
constexpr int kPatchRadius = 4;  // bins each side for the correlation patch

std::vector<double> SqrtHannWindow() {
  std::vector<double> w(kFftSize);
  for (size_t i = 0; i < kFftSize; ++i) {
    const double hann =
        0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) / kFftSize);
    w[i] = std::sqrt(hann);
  }
  return w;
}

// Log-magnitude spectra of sqrt-hann windowed frames at 50% overlap. The
// input is padded by kHop zeros in front so every real sample is covered by
// exactly two frames.
std::vector<std::vector<double>> LogMagFrames(const AudioBuffer &audio,
                                              std::vector<std::vector<std::complex<double>>> *spectra) {
  const size_t len = audio.NumSamples();
  const size_t padded_len = len + kHop + kFftSize;
  std::vector<double> padded(padded_len, 0.0);
  std::copy(audio.samples.begin(), audio.samples.end(), padded.begin() + kHop);

  const size_t n_frames = (padded_len - kFftSize) / kHop + 1;
  static const std::vector<double> window = SqrtHannWindow();

  std::vector<std::vector<double>> logmag(n_frames, std::vector<double>(kBins));
  if (spectra != nullptr) {
    spectra->assign(n_frames, std::vector<std::complex<double>>(kFftSize));
  }
#pragma omp parallel for schedule(static)
  for (long k = 0; k < static_cast<long>(n_frames); ++k) {
    std::vector<std::complex<double>> buf(kFftSize);
    const size_t start = static_cast<size_t>(k) * kHop;
    for (size_t i = 0; i < kFftSize; ++i) {
      buf[i] = padded[start + i] * window[i];
    }
    kernels::Fft(buf, /*inverse=*/false);
    for (size_t b = 0; b < kBins; ++b) {
      logmag[static_cast<size_t>(k)][b] = std::log(std::abs(buf[b]) + kMagFloor);
    }
    if (spectra != nullptr) (*spectra)[static_cast<size_t>(k)] = std::move(buf);
  }
  return logmag;
}

std::vector<double> MeanSpectrum(const std::vector<std::vector<double>> &frames) {
  std::vector<double> mean(kBins, 0.0);
  if (frames.empty()) return mean;
  for (const auto &frame : frames) {
    for (size_t b = 0; b < kBins; ++b) mean[b] += frame[b];
  }
  for (double &v : mean) v /= static_cast<double>(frames.size());
  return mean;
}

// Pearson correlation between x and y over [lo, hi).
double PatchCorrelation(const std::vector<double> &x, const std::vector<double> &y,
                        size_t lo, size_t hi) {
  const double n = static_cast<double>(hi - lo);
  double mx = 0.0, my = 0.0;
  for (size_t i = lo; i < hi; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = lo; i < hi; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx < 1e-18 || syy < 1e-18) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

AudioBuffer OracleExtract(const AudioBuffer &mixture, const SpeakerClue &clue,
                          const ExtractorSpec &spec) {
  if (!clue.oracle_stem.has_value() ||
      clue.oracle_stem->NumSamples() != mixture.NumSamples()) {
    throw std::domain_error("clue mismatch: oracle mode needs a stem of mixture length");
  }
  const AudioBuffer &stem = *clue.oracle_stem;
  if (std::isinf(spec.artifact_db) && spec.artifact_db > 0) {
    return stem;  // artifact injection disabled
  }
  if (!std::isfinite(spec.artifact_db)) {
    throw std::domain_error("artifact_db must be finite or +inf");
  }

  double p_stem = 0.0;
  {
    const double sum = kernels::SumSquares(stem.samples);
    p_stem = sum / static_cast<double>(stem.NumSamples());
  }
  if (p_stem < kPowerFloor) throw std::domain_error("silent source");

  AudioBuffer artifact;
  artifact.sample_rate = stem.sample_rate;
  artifact.samples.resize(stem.NumSamples());
  Rng rng(spec.seed);
  for (double &v : artifact.samples) v = rng.Gaussian();

  const double p_raw =
      kernels::SumSquares(artifact.samples) / static_cast<double>(artifact.NumSamples());
  const double gain =
      std::sqrt(p_stem / (p_raw * std::pow(10.0, spec.artifact_db / 10.0)));

  AudioBuffer out;
  out.sample_rate = stem.sample_rate;
  out.samples.resize(stem.NumSamples());
  for (size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i] = stem.samples[i] + gain * artifact.samples[i];
  }
  return out;
}

AudioBuffer SpectralGateExtract(const AudioBuffer &mixture, const SpeakerClue &clue,
                                const ExtractorSpec &spec) {
  if (!clue.enrollment.has_value() || clue.enrollment->Empty()) {
    throw std::domain_error("clue mismatch: spectral gate needs an enrollment");
  }

  const std::vector<double> sig_clue = MeanSpectrum(LogMagFrames(*clue.enrollment, nullptr));

  std::vector<std::vector<std::complex<double>>> spectra;
  const std::vector<std::vector<double>> logmag = LogMagFrames(mixture, &spectra);
  const size_t n_frames = logmag.size();

  // Non-clue signature: the part of the mixture's average spectrum not
  // explained by the enrollment signature (least-squares residual).
  const std::vector<double> sig_mix = MeanSpectrum(logmag);
  std::vector<double> sig_res(kBins);
  {
    const double beta_num = PatchCorrelation(sig_mix, sig_clue, 0, kBins);
    double var_clue = 0.0, var_mix = 0.0, mean_clue = 0.0, mean_mix = 0.0;
    for (size_t b = 0; b < kBins; ++b) {
      mean_clue += sig_clue[b];
      mean_mix += sig_mix[b];
    }
    mean_clue /= kBins;
    mean_mix /= kBins;
    for (size_t b = 0; b < kBins; ++b) {
      var_clue += (sig_clue[b] - mean_clue) * (sig_clue[b] - mean_clue);
      var_mix += (sig_mix[b] - mean_mix) * (sig_mix[b] - mean_mix);
    }
    const double beta =
        var_clue < 1e-18 ? 0.0 : beta_num * std::sqrt(var_mix / var_clue);
    for (size_t b = 0; b < kBins; ++b) {
      sig_res[b] = (sig_mix[b] - mean_mix) - beta * (sig_clue[b] - mean_clue);
    }
  }

  const double attenuation = std::pow(10.0, -spec.gate_threshold_db / 20.0);

  // Gate: per frame and band, keep the band if its spectral neighborhood
  // matches the enrollment signature at least as well as the residual one.
#pragma omp parallel for schedule(static)
  for (long k = 0; k < static_cast<long>(n_frames); ++k) {
    const std::vector<double> &frame = logmag[static_cast<size_t>(k)];
    auto &spectrum = spectra[static_cast<size_t>(k)];
    for (size_t b = 0; b < kBins; ++b) {
      const size_t lo = b < kPatchRadius ? 0 : b - kPatchRadius;
      const size_t hi = std::min(kBins, b + kPatchRadius + 1);
      const double c_clue = PatchCorrelation(frame, sig_clue, lo, hi);
      const double c_res = PatchCorrelation(frame, sig_res, lo, hi);
      if (c_res > c_clue) {
        spectrum[b] *= attenuation;
        if (b > 0 && b < kFftSize - b) spectrum[kFftSize - b] *= attenuation;
      }
    }
  }

  // Weighted overlap-add back to a waveform of the mixture's length.
  static const std::vector<double> window = SqrtHannWindow();
  const size_t len = mixture.NumSamples();
  std::vector<double> acc(len + kHop + kFftSize, 0.0);
  for (size_t k = 0; k < n_frames; ++k) {
    kernels::Fft(spectra[k], /*inverse=*/true);
    const size_t start = k * kHop;
    for (size_t i = 0; i < kFftSize; ++i) {
      acc[start + i] += window[i] * spectra[k][i].real();
    }
  }

  AudioBuffer out;
  out.sample_rate = mixture.sample_rate;
  out.samples.assign(acc.begin() + kHop, acc.begin() + kHop + static_cast<long>(len));

  // Gating only attenuates; clamp out any overlap-add residue above the
  // input energy.
  const double p_in = kernels::SumSquares(mixture.samples);
  const double p_out = kernels::SumSquares(out.samples);
  if (p_out > p_in && p_out > 0.0) {
    kernels::Scale(out.samples, std::sqrt(p_in / p_out));
  }
  return out;
}

}  // namespace

AudioBuffer Extract(const AudioBuffer &mixture, const SpeakerClue &clue,
                    const ExtractorSpec &spec) {
  if (mixture.Empty()) throw std::domain_error("empty signal");
  AudioBuffer out;
  switch (spec.kind) {
    case ExtractorKind::kOracle:
      out = OracleExtract(mixture, clue, spec);
      break;
    case ExtractorKind::kSpectralGate:
      out = SpectralGateExtract(mixture, clue, spec);
      break;
  }
  CheckFinite(out, "extractor output");
  return out;
}

ExtractorKind ExtractorKindFromString(const std::string &name) {
  if (name == "oracle") return ExtractorKind::kOracle;
  if (name == "spectral_gate") return ExtractorKind::kSpectralGate;
  throw std::domain_error("unknown extractor kind: " + name);
}

std::string ExtractorKindName(ExtractorKind kind) {
  return kind == ExtractorKind::kOracle ? "oracle" : "spectral_gate";
}

}  // namespace mixswitch
