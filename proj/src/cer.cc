// src/cer.cc

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

#include "mixswitch/cer.h"

#include <algorithm>
#include <stdexcept>

namespace mixswitch {

std::vector<char32_t> DecodeUtf8(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    const uint8_t b0 = static_cast<uint8_t>(text[i]);
    size_t need = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xe0) == 0xc0) {
      need = 1;
      cp = b0 & 0x1f;
    } else if ((b0 & 0xf0) == 0xe0) {
      need = 2;
      cp = b0 & 0x0f;
    } else if ((b0 & 0xf8) == 0xf0) {
      need = 3;
      cp = b0 & 0x07;
    } else {
      out.push_back(b0);  // stray byte stands alone
      ++i;
      continue;
    }
    bool ok = i + need < text.size();
    for (size_t k = 1; ok && k <= need; ++k) {
      if ((static_cast<uint8_t>(text[i + k]) & 0xc0) != 0x80) ok = false;
    }
    if (!ok) {
      out.push_back(b0);
      ++i;
      continue;
    }
    for (size_t k = 1; k <= need; ++k) {
      cp = (cp << 6) | (static_cast<uint8_t>(text[i + k]) & 0x3f);
    }
    out.push_back(cp);
    i += need + 1;
  }
  return out;
}

size_t EditDistance(const std::vector<char32_t> &a, const std::vector<char32_t> &b) {
  const size_t n = a.size(), m = b.size();
  if (n == 0) return m;
  if (m == 0) return n;
  // Two-row Wagner-Fischer.
  std::vector<size_t> prev(m + 1), curr(m + 1);
  for (size_t j = 0; j <= m; ++j) prev[j] = j;
  for (size_t i = 1; i <= n; ++i) {
    curr[0] = i;
    for (size_t j = 1; j <= m; ++j) {
      const size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      curr[j] = std::min({sub, prev[j] + 1, curr[j - 1] + 1});
    }
    std::swap(prev, curr);
  }
  return prev[m];
}

double Cer(std::string_view reference, std::string_view hypothesis) {
  const std::vector<char32_t> ref = DecodeUtf8(reference);
  if (ref.empty()) throw std::domain_error("empty reference");
  const std::vector<char32_t> hyp = DecodeUtf8(hypothesis);
  return static_cast<double>(EditDistance(ref, hyp)) / static_cast<double>(ref.size());
}

}  // namespace mixswitch
