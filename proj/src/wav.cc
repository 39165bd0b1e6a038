// src/wav.cc

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

#include "mixswitch/wav.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace mixswitch {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatIeeeFloat = 3;

[[noreturn]] void DecodeError(const std::string &detail) {
  throw std::runtime_error("decode error: " + detail);
}

uint32_t ReadU32(const uint8_t *p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t ReadU16(const uint8_t *p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void PutU32(std::vector<uint8_t> *out, uint32_t v) {
  out->push_back(static_cast<uint8_t>(v & 0xff));
  out->push_back(static_cast<uint8_t>((v >> 8) & 0xff));
  out->push_back(static_cast<uint8_t>((v >> 16) & 0xff));
  out->push_back(static_cast<uint8_t>((v >> 24) & 0xff));
}

void PutU16(std::vector<uint8_t> *out, uint16_t v) {
  out->push_back(static_cast<uint8_t>(v & 0xff));
  out->push_back(static_cast<uint8_t>((v >> 8) & 0xff));
}

void PutTag(std::vector<uint8_t> *out, const char *tag) {
  out->insert(out->end(), tag, tag + 4);
}

}  // namespace

AudioBuffer LoadWav(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) DecodeError("cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    DecodeError("not a RIFF/WAVE file: " + path);
  }

  uint16_t format_tag = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  bool have_fmt = false;
  const uint8_t *data = nullptr;
  uint32_t data_len = 0;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char *tag = reinterpret_cast<const char *>(bytes.data() + pos);
    const uint32_t len = ReadU32(bytes.data() + pos + 4);
    if (pos + 8 + len > bytes.size()) DecodeError("truncated chunk in " + path);
    const uint8_t *body = bytes.data() + pos + 8;
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (len < 16) DecodeError("short fmt chunk in " + path);
      format_tag = ReadU16(body);
      channels = ReadU16(body + 2);
      rate = ReadU32(body + 4);
      bits = ReadU16(body + 14);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      data = body;
      data_len = len;
    }
    pos += 8 + len + (len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) DecodeError("missing fmt/data chunk in " + path);
  if (channels != 1) {
    throw std::domain_error("channel error: expected mono, got " +
                            std::to_string(channels) + " channels in " + path);
  }
  if (rate != static_cast<uint32_t>(kSampleRate)) {
    throw std::domain_error("rate mismatch: expected 16000 Hz, got " +
                            std::to_string(rate) + " Hz in " + path);
  }

  AudioBuffer buffer;
  buffer.sample_rate = kSampleRate;
  if (format_tag == kFormatPcm && bits == 16) {
    const size_t n = data_len / 2;
    buffer.samples.resize(n);
    for (size_t i = 0; i < n; ++i) {
      const int16_t v = static_cast<int16_t>(ReadU16(data + 2 * i));
      buffer.samples[i] = static_cast<double>(v) / 32768.0;
    }
  } else if (format_tag == kFormatIeeeFloat && bits == 32) {
    const size_t n = data_len / 4;
    buffer.samples.resize(n);
    for (size_t i = 0; i < n; ++i) {
      const uint32_t u = ReadU32(data + 4 * i);
      float f;
      std::memcpy(&f, &u, 4);
      buffer.samples[i] = static_cast<double>(f);
    }
  } else {
    DecodeError("unsupported sample format (tag " + std::to_string(format_tag) +
                ", " + std::to_string(bits) + " bits) in " + path);
  }
  CheckFinite(buffer, path.c_str());
  return buffer;
}

void SaveWav(const AudioBuffer &buffer, const std::string &path, WavFormat format) {
  const uint16_t bits = format == WavFormat::kPcm16 ? 16 : 32;
  const uint16_t block_align = static_cast<uint16_t>(bits / 8);
  const uint32_t data_len = static_cast<uint32_t>(buffer.NumSamples()) * block_align;

  std::vector<uint8_t> out;
  out.reserve(44 + data_len);
  PutTag(&out, "RIFF");
  PutU32(&out, 36 + data_len);
  PutTag(&out, "WAVE");
  PutTag(&out, "fmt ");
  PutU32(&out, 16);
  PutU16(&out, format == WavFormat::kPcm16 ? kFormatPcm : kFormatIeeeFloat);
  PutU16(&out, 1);  // mono
  PutU32(&out, static_cast<uint32_t>(buffer.sample_rate));
  PutU32(&out, static_cast<uint32_t>(buffer.sample_rate) * block_align);
  PutU16(&out, block_align);
  PutU16(&out, bits);
  PutTag(&out, "data");
  PutU32(&out, data_len);

  if (format == WavFormat::kPcm16) {
    for (double v : buffer.samples) {
      double scaled = std::round(v * 32768.0);
      scaled = std::clamp(scaled, -32768.0, 32767.0);
      PutU16(&out, static_cast<uint16_t>(static_cast<int16_t>(scaled)));
    }
  } else {
    for (double v : buffer.samples) {
      const float f = static_cast<float>(v);
      uint32_t u;
      std::memcpy(&u, &f, 4);
      PutU32(&out, u);
    }
  }

  std::ofstream fout(path, std::ios::binary | std::ios::trunc);
  if (!fout) throw std::runtime_error("cannot write " + path);
  fout.write(reinterpret_cast<const char *>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!fout) throw std::runtime_error("cannot write " + path);
}

}  // namespace mixswitch
