// tests/test_kernels.cc

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
#include <complex>
#include <random>
#include <vector>

#include "mixswitch/kernels.h"

#include "doctest.h"

using namespace mixswitch::kernels;

namespace {

std::vector<double> RandomVector(std::mt19937 &gen, size_t n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double &x : v) x = dist(gen);
  return v;
}

// Quadratic-time DFT used as the FFT oracle.
std::vector<std::complex<double>> NaiveDft(const std::vector<std::complex<double>> &in) {
  const size_t n = in.size();
  std::vector<std::complex<double>> out(n);
  for (size_t k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (size_t t = 0; t < n; ++t) {
      const double angle = -2.0 * M_PI * static_cast<double>(k * t) / static_cast<double>(n);
      acc += in[t] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("parallel sum of squares is bit-identical to the serial reference") {
  std::mt19937 gen(1);
  // Sizes straddling the block boundary and well past it.
  for (size_t n : {size_t{1}, size_t{4095}, size_t{4096}, size_t{4097},
                   size_t{3 * 4096 + 17}, size_t{1 << 18}}) {
    const std::vector<double> x = RandomVector(gen, n);
    CHECK(SumSquares(x) == SumSquaresSerial(x));
  }
}

TEST_CASE("parallel add_three matches serial exactly") {
  std::mt19937 gen(2);
  const size_t n = 100000;
  const std::vector<double> a = RandomVector(gen, n);
  const std::vector<double> b = RandomVector(gen, n);
  const std::vector<double> c = RandomVector(gen, n);
  std::vector<double> out_p(n), out_s(n);
  AddThree(a, b, c, out_p);
  AddThreeSerial(a, b, c, out_s);
  CHECK(out_p == out_s);
}

TEST_CASE("parallel scale matches serial exactly") {
  std::mt19937 gen(3);
  std::vector<double> a = RandomVector(gen, 50000);
  std::vector<double> b = a;
  Scale(a, 0.7371);
  ScaleSerial(b, 0.7371);
  CHECK(a == b);
}

TEST_CASE("parallel frame powers match serial and drop the partial frame") {
  std::mt19937 gen(4);
  const std::vector<double> x = RandomVector(gen, 320 * 100 + 57);
  const std::vector<double> p = FramePowers(x, 320);
  const std::vector<double> s = FramePowersSerial(x, 320);
  CHECK(p.size() == 100);
  CHECK(p == s);
}

TEST_CASE("masked sum of squares matches serial on random masks") {
  std::mt19937 gen(5);
  const size_t frame_len = 320;
  const size_t n_frames = 200;
  const std::vector<double> x = RandomVector(gen, frame_len * n_frames);
  std::vector<uint8_t> mask(n_frames);
  std::bernoulli_distribution coin(0.4);
  for (auto &m : mask) m = coin(gen) ? 1 : 0;
  size_t count_p = 0, count_s = 0;
  const double sum_p = MaskedSumSquares(x, mask, frame_len, &count_p);
  const double sum_s = MaskedSumSquaresSerial(x, mask, frame_len, &count_s);
  CHECK(sum_p == sum_s);
  CHECK(count_p == count_s);
}

TEST_CASE("fft agrees with the naive dft") {
  std::mt19937 gen(6);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (size_t n : {size_t{8}, size_t{64}, size_t{512}}) {
    std::vector<std::complex<double>> data(n);
    for (auto &v : data) v = {dist(gen), dist(gen)};
    const std::vector<std::complex<double>> expected = NaiveDft(data);
    std::vector<std::complex<double>> actual = data;
    Fft(actual, false);
    for (size_t k = 0; k < n; ++k) {
      CHECK(std::abs(actual[k] - expected[k]) < 1e-9 * static_cast<double>(n));
    }
    // Inverse round trip.
    Fft(actual, true);
    for (size_t k = 0; k < n; ++k) {
      CHECK(std::abs(actual[k] - data[k]) < 1e-12);
    }
  }
}

TEST_CASE("fft rejects non-power-of-two sizes") {
  std::vector<std::complex<double>> data(12);
  CHECK_THROWS_AS(Fft(data, false), std::invalid_argument);
}

TEST_CASE("seed mixing separates substreams") {
  CHECK(MixSeed(1, 2) != MixSeed(2, 1));
  CHECK(MixSeed(0, 0) != 0);
  CHECK(MixSeed(5, 1) == MixSeed(5, 1));
}
