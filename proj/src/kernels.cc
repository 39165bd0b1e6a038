// src/kernels.cc

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

#include "mixswitch/kernels.h"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace mixswitch {
namespace kernels {

namespace {

// Both reduction variants sum each fixed block with this exact loop and fold
// the block sums left to right, so they agree bitwise.
double BlockSumSquares(const double *p, size_t n) {
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) s += p[i] * p[i];
  return s;
}

size_t NumBlocks(size_t n) { return (n + kReduceBlock - 1) / kReduceBlock; }

}  // namespace

double SumSquaresSerial(std::span<const double> x) {
  const size_t nb = NumBlocks(x.size());
  double total = 0.0;
  for (size_t b = 0; b < nb; ++b) {
    const size_t begin = b * kReduceBlock;
    const size_t len = std::min(kReduceBlock, x.size() - begin);
    total += BlockSumSquares(x.data() + begin, len);
  }
  return total;
}

double SumSquares(std::span<const double> x) {
  const size_t nb = NumBlocks(x.size());
  if (nb < 4) return SumSquaresSerial(x);
  std::vector<double> block_sums(nb);
#pragma omp parallel for schedule(static)
  for (long b = 0; b < static_cast<long>(nb); ++b) {
    const size_t begin = static_cast<size_t>(b) * kReduceBlock;
    const size_t len = std::min(kReduceBlock, x.size() - begin);
    block_sums[static_cast<size_t>(b)] = BlockSumSquares(x.data() + begin, len);
  }
  double total = 0.0;
  for (double s : block_sums) total += s;
  return total;
}

void AddThreeSerial(std::span<const double> a, std::span<const double> b,
                    std::span<const double> c, std::span<double> out) {
  assert(a.size() == b.size() && b.size() == c.size() && c.size() == out.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i] + c[i];
}

void AddThree(std::span<const double> a, std::span<const double> b,
              std::span<const double> c, std::span<double> out) {
  assert(a.size() == b.size() && b.size() == c.size() && c.size() == out.size());
  const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = a[i] + b[i] + c[i];
}

void ScaleSerial(std::span<double> x, double gain) {
  for (double &v : x) v *= gain;
}

void Scale(std::span<double> x, double gain) {
  const long n = static_cast<long>(x.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) x[i] *= gain;
}

std::vector<double> FramePowersSerial(std::span<const double> x, size_t frame_len) {
  assert(frame_len > 0);
  const size_t nf = x.size() / frame_len;
  std::vector<double> powers(nf);
  for (size_t f = 0; f < nf; ++f) {
    powers[f] = BlockSumSquares(x.data() + f * frame_len, frame_len) /
                static_cast<double>(frame_len);
  }
  return powers;
}

std::vector<double> FramePowers(std::span<const double> x, size_t frame_len) {
  assert(frame_len > 0);
  const size_t nf = x.size() / frame_len;
  std::vector<double> powers(nf);
#pragma omp parallel for schedule(static)
  for (long f = 0; f < static_cast<long>(nf); ++f) {
    powers[static_cast<size_t>(f)] =
        BlockSumSquares(x.data() + static_cast<size_t>(f) * frame_len, frame_len) /
        static_cast<double>(frame_len);
  }
  return powers;
}

double MaskedSumSquaresSerial(std::span<const double> x, std::span<const uint8_t> mask,
                              size_t frame_len, size_t *n_samples) {
  double total = 0.0;
  size_t count = 0;
  for (size_t f = 0; f < mask.size(); ++f) {
    if (!mask[f]) continue;
    total += BlockSumSquares(x.data() + f * frame_len, frame_len);
    count += frame_len;
  }
  if (n_samples != nullptr) *n_samples = count;
  return total;
}

double MaskedSumSquares(std::span<const double> x, std::span<const uint8_t> mask,
                        size_t frame_len, size_t *n_samples) {
  const size_t nf = mask.size();
  std::vector<double> frame_sums(nf, 0.0);
#pragma omp parallel for schedule(static)
  for (long f = 0; f < static_cast<long>(nf); ++f) {
    if (mask[static_cast<size_t>(f)]) {
      frame_sums[static_cast<size_t>(f)] =
          BlockSumSquares(x.data() + static_cast<size_t>(f) * frame_len, frame_len);
    }
  }
  double total = 0.0;
  size_t count = 0;
  for (size_t f = 0; f < nf; ++f) {
    if (!mask[f]) continue;
    total += frame_sums[f];
    count += frame_len;
  }
  if (n_samples != nullptr) *n_samples = count;
  return total;
}

void Fft(std::span<std::complex<double>> data, bool inverse) {
  const size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("fft size must be a power of two");
  }
  // Bit-reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double angle = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = data[i + k];
        const std::complex<double> v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto &v : data) v *= inv_n;
  }
}

uint64_t MixSeed(uint64_t a, uint64_t b) {
  uint64_t z = a + 0x9e3779b97f4a7c15ULL + (b << 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace kernels
}  // namespace mixswitch
