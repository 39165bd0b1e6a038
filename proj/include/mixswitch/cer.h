// include/mixswitch/cer.h

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

#ifndef MIXSWITCH_CER_H_
#define MIXSWITCH_CER_H_

#include <string>
#include <string_view>
#include <vector>

namespace mixswitch {

/// Lenient UTF-8 decode to code points; an invalid byte becomes its own
/// code point.
std::vector<char32_t> DecodeUtf8(std::string_view text);

/// Minimal edit distance (substitutions, deletions, insertions at unit cost).
size_t EditDistance(const std::vector<char32_t> &a, const std::vector<char32_t> &b);

/// Character error rate: edit distance / |reference|, over code points.
/// May exceed 1 with heavy insertions. Throws "empty reference".
double Cer(std::string_view reference, std::string_view hypothesis);

}  // namespace mixswitch

#endif  // MIXSWITCH_CER_H_
