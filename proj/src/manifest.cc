// src/manifest.cc

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

#include "mixswitch/manifest.h"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace mixswitch {

namespace {

using nlohmann::json;

[[noreturn]] void ManifestError(size_t line_no, const std::string &detail) {
  throw std::runtime_error("manifest error: line " + std::to_string(line_no) + ": " +
                           detail);
}

json ParseLine(const std::string &line, size_t line_no) {
  try {
    json j = json::parse(line);
    if (!j.is_object()) ManifestError(line_no, "not a JSON object");
    return j;
  } catch (const json::parse_error &e) {
    ManifestError(line_no, e.what());
  }
}

std::string DefaultUttId(size_t line_no) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "utt%04zu", line_no);
  return buf;
}

template <typename Fn>
void ForEachLine(const std::string &path, Fn fn) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    fn(line, line_no);
  }
}

}  // namespace

std::vector<ManifestRow> LoadMixManifest(const std::string &path) {
  std::vector<ManifestRow> rows;
  ForEachLine(path, [&](const std::string &line, size_t line_no) {
    const json j = ParseLine(line, line_no);
    ManifestRow row;
    try {
      row.spec.target_source = j.at("target").get<std::string>();
      row.spec.interferer_source = j.at("interferer").get<std::string>();
      row.spec.noise_source = j.at("noise").get<std::string>();
      row.spec.sir_db = j.at("sir_db").get<double>();
      row.spec.snr_db = j.at("snr_db").get<double>();
      row.spec.seed = j.at("seed").get<uint64_t>();
      if (j.contains("noise_offset")) {
        row.spec.noise_offset = j.at("noise_offset").get<uint64_t>();
      }
      row.utt_id = j.value("utt_id", DefaultUttId(line_no));
    } catch (const json::exception &e) {
      ManifestError(line_no, e.what());
    }
    rows.push_back(std::move(row));
  });
  return rows;
}

std::vector<UttEntry> LoadGridManifest(const std::string &path) {
  std::vector<UttEntry> utts;
  ForEachLine(path, [&](const std::string &line, size_t line_no) {
    const json j = ParseLine(line, line_no);
    UttEntry utt;
    try {
      utt.target = j.at("target").get<std::string>();
      utt.interferer = j.at("interferer").get<std::string>();
      utt.seed = j.at("seed").get<uint64_t>();
      utt.utt_id = j.value("utt_id", DefaultUttId(line_no));
      utt.text = j.value("text", std::string());
      utt.target_enroll = j.value("target_enroll", std::string());
      utt.interferer_enroll = j.value("interferer_enroll", std::string());
      if (j.contains("noise_offset")) {
        utt.noise_offset = j.at("noise_offset").get<uint64_t>();
      }
    } catch (const json::exception &e) {
      ManifestError(line_no, e.what());
    }
    utts.push_back(std::move(utt));
  });
  return utts;
}

}  // namespace mixswitch
