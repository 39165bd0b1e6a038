// tools/bench.cc

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

// Compares the OpenMP kernels against their serial references: verifies
// bitwise agreement, then reports throughput and speedup.

#include <omp.h>

#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "mixswitch/extract.h"
#include "mixswitch/grid.h"
#include "mixswitch/kernels.h"
#include "mixswitch/rng.h"
#include "mixswitch/synth.h"

using namespace mixswitch;

namespace {

double TimeBest(const std::function<void()> &fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = omp_get_wtime();
    fn();
    const double t1 = omp_get_wtime();
    if (t1 - t0 < best) best = t1 - t0;
  }
  return best;
}

void Report(const char *name, double bytes, double serial_s, double parallel_s) {
  std::printf("%-18s %10.3f ms %10.3f ms   %5.2fx   %7.2f GB/s\n", name,
              serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
              bytes / parallel_s / 1e9);
}

}  // namespace

int main(int argc, char **argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;
  }
  const size_t n = quick ? (1u << 20) : (1u << 24);
  const int reps = quick ? 3 : 10;

  std::printf("threads: %d, samples: %zu\n", omp_get_max_threads(), n);
  std::printf("%-18s %13s %13s %8s %13s\n", "kernel", "serial", "openmp", "speedup",
              "throughput");

  std::vector<double> x(n), a(n), b(n), c(n), out(n);
  Rng rng(7);
  for (size_t i = 0; i < n; ++i) {
    x[i] = rng.Gaussian();
    a[i] = rng.Gaussian();
    b[i] = rng.Gaussian();
    c[i] = rng.Gaussian();
  }

  {
    volatile double sink = 0.0;
    const double serial_ref = kernels::SumSquaresSerial(x);
    const double parallel_val = kernels::SumSquares(x);
    if (serial_ref != parallel_val) {
      std::fprintf(stderr, "sum_squares: serial and parallel results differ\n");
      return 1;
    }
    const double ts = TimeBest([&] { sink = kernels::SumSquaresSerial(x); }, reps);
    const double tp = TimeBest([&] { sink = kernels::SumSquares(x); }, reps);
    Report("sum_squares", static_cast<double>(n) * 8, ts, tp);
  }

  {
    std::vector<double> out_serial(n);
    kernels::AddThreeSerial(a, b, c, out_serial);
    kernels::AddThree(a, b, c, out);
    if (std::memcmp(out_serial.data(), out.data(), n * 8) != 0) {
      std::fprintf(stderr, "add_three: serial and parallel results differ\n");
      return 1;
    }
    const double ts = TimeBest([&] { kernels::AddThreeSerial(a, b, c, out); }, reps);
    const double tp = TimeBest([&] { kernels::AddThree(a, b, c, out); }, reps);
    Report("add_three", static_cast<double>(n) * 32, ts, tp);
  }

  {
    const size_t frame_len = 320;  // 20 ms at 16 kHz
    const auto serial_ref = kernels::FramePowersSerial(x, frame_len);
    const auto parallel_val = kernels::FramePowers(x, frame_len);
    if (serial_ref != parallel_val) {
      std::fprintf(stderr, "frame_powers: serial and parallel results differ\n");
      return 1;
    }
    const double ts = TimeBest([&] { (void)kernels::FramePowersSerial(x, frame_len); }, reps);
    const double tp = TimeBest([&] { (void)kernels::FramePowers(x, frame_len); }, reps);
    Report("frame_powers", static_cast<double>(n) * 8, ts, tp);
  }

  {
    // Whole-pipeline view: the grid harness parallelizes across utterances.
    const double seconds = quick ? 2.0 : 4.0;
    const AudioBuffer mixture = WhiteNoise(seconds, 11, 0.1);
    const AudioBuffer enroll = SineBurst(seconds, seconds, 320.0, 0.3);
    SpeakerClue clue;
    clue.role = ClueRole::kTarget;
    clue.enrollment = enroll;
    ExtractorSpec spec;
    spec.kind = ExtractorKind::kSpectralGate;
    const double ts = TimeBest(
        [&] {
          omp_set_num_threads(1);
          (void)Extract(mixture, clue, spec);
          omp_set_num_threads(omp_get_num_procs());
        },
        quick ? 2 : 3);
    const double tp = TimeBest([&] { (void)Extract(mixture, clue, spec); }, quick ? 2 : 3);
    Report("spectral_gate", mixture.NumSamples() * 8.0, ts, tp);
  }

  return 0;
}
