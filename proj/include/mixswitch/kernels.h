// include/mixswitch/kernels.h

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

#ifndef MIXSWITCH_KERNELS_H_
#define MIXSWITCH_KERNELS_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

// Data-parallel inner loops, each in two variants: an OpenMP version used by
// the pipeline and a serial reference kept for testing. Reductions are
// blocked with a fixed block size and folded in block order, so the parallel
// result is bit-identical to the serial one for any thread count.

namespace mixswitch {
namespace kernels {

// Block size for deterministic blocked reductions.
constexpr size_t kReduceBlock = 4096;

double SumSquaresSerial(std::span<const double> x);
double SumSquares(std::span<const double> x);

/// out[t] = a[t] + b[t] + c[t]. All spans must have equal length.
void AddThreeSerial(std::span<const double> a, std::span<const double> b,
                    std::span<const double> c, std::span<double> out);
void AddThree(std::span<const double> a, std::span<const double> b,
              std::span<const double> c, std::span<double> out);

/// x[t] *= gain.
void ScaleSerial(std::span<double> x, double gain);
void Scale(std::span<double> x, double gain);

/// Mean squared sample per whole frame of frame_len samples; a trailing
/// partial frame is dropped.
std::vector<double> FramePowersSerial(std::span<const double> x, size_t frame_len);
std::vector<double> FramePowers(std::span<const double> x, size_t frame_len);

/// Sum of squares restricted to the frames selected by `mask` (frame f covers
/// samples [f*frame_len, (f+1)*frame_len)). Returns the selected sample count
/// in *n_samples. Deterministic for any thread count.
double MaskedSumSquaresSerial(std::span<const double> x, std::span<const uint8_t> mask,
                              size_t frame_len, size_t *n_samples);
double MaskedSumSquares(std::span<const double> x, std::span<const uint8_t> mask,
                        size_t frame_len, size_t *n_samples);

/// In-place radix-2 FFT; data.size() must be a power of two.
void Fft(std::span<std::complex<double>> data, bool inverse);

/// splitmix64-style combiner for deriving substream seeds.
uint64_t MixSeed(uint64_t a, uint64_t b);

}  // namespace kernels
}  // namespace mixswitch

#endif  // MIXSWITCH_KERNELS_H_
