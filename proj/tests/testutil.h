// tests/testutil.h

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

#ifndef MIXSWITCH_TESTS_TESTUTIL_H_
#define MIXSWITCH_TESTS_TESTUTIL_H_

#include <filesystem>
#include <random>
#include <string>

#include "mixswitch/audio.h"

namespace mixswitch::test {

/// Scratch directory removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string &tag) {
    path_ = std::filesystem::temp_directory_path() /
            (tag + "_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  std::string File(const std::string &name) const { return (path_ / name).string(); }
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline AudioBuffer RandomBuffer(std::mt19937 &gen, size_t n, double scale = 0.3) {
  AudioBuffer b;
  b.samples.resize(n);
  std::uniform_real_distribution<double> dist(-scale, scale);
  for (double &v : b.samples) v = dist(gen);
  return b;
}

inline AudioBuffer ConstantBuffer(size_t n, double value) {
  AudioBuffer b;
  b.samples.assign(n, value);
  return b;
}

}  // namespace mixswitch::test

#endif  // MIXSWITCH_TESTS_TESTUTIL_H_
