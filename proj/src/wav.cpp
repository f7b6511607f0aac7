// Copyright 2026 The asrbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "asrbench/wav.hpp"

#include <cmath>
#include <cstring>
#include <optional>
#include <string>

#include "asrbench/error.hpp"

namespace asrbench {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t le16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t le32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

void put16(Bytes& b, std::size_t at, std::uint16_t v) {
  b[at] = static_cast<std::uint8_t>(v);
  b[at + 1] = static_cast<std::uint8_t>(v >> 8);
}

void put32(Bytes& b, std::size_t at, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) b[at + k] = static_cast<std::uint8_t>(v >> (8 * k));
}

void append32(Bytes& b, std::uint32_t v) {
  b.resize(b.size() + 4);
  put32(b, b.size() - 4, v);
}

void append_tag(Bytes& b, const char* tag) { b.insert(b.end(), tag, tag + 4); }

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::kFormat, "WAV: " + what); }

}  // namespace

WavInfo parse_wav(std::span<const std::uint8_t> wav) {
  if (wav.size() < 12) bad("truncated RIFF header");
  if (!tag_is(wav, 0, "RIFF") || !tag_is(wav, 8, "WAVE")) bad("not a RIFF/WAVE file");

  WavInfo info;
  bool have_fmt = false;
  std::optional<std::size_t> data_at;
  std::size_t pos = 12;
  while (pos + 8 <= wav.size()) {
    const std::uint32_t size = le32(wav, pos + 4);
    const std::size_t body = pos + 8;
    if (tag_is(wav, pos, "fmt ")) {
      if (size < 16 || body + size > wav.size()) bad("truncated fmt chunk");
      std::uint16_t format = le16(wav, body);
      if (format == kFormatExtensible) {
        if (size < 40) bad("short WAVE_FORMAT_EXTENSIBLE chunk");
        format = le16(wav, body + 24);  // first bytes of the subformat GUID
      }
      if (format != kFormatPcm) bad("only PCM audio is supported");
      info.channels = le16(wav, body + 2);
      info.sample_rate = le32(wav, body + 4);
      info.block_align = le16(wav, body + 12);
      info.bits_per_sample = le16(wav, body + 14);
      have_fmt = true;
    } else if (tag_is(wav, pos, "data")) {
      if (body + size > wav.size()) bad("data chunk runs past end of file");
      data_at = body;
      info.data_offset = body;
      info.data_size = size;
      break;
    }
    const std::size_t next = body + size + (size & 1u);
    if (next <= pos) bad("corrupt chunk size");
    pos = next;
  }
  if (!have_fmt) bad("missing fmt chunk");
  if (!data_at) bad("missing data chunk");
  const auto bits = info.bits_per_sample;
  if (bits != 8 && bits != 16 && bits != 24 && bits != 32)
    bad("unsupported bit depth " + std::to_string(bits));
  if (info.channels == 0 || info.sample_rate == 0) bad("zero channels or sample rate");
  if (info.block_align != info.channels * (bits / 8)) bad("inconsistent block alignment");
  return info;
}

Bytes pad_audio(std::span<const std::uint8_t> wav, double target_seconds) {
  if (!std::isfinite(target_seconds) || target_seconds < 0.0)
    fail(ErrorCode::kInvalidArgument, "target duration must be a finite non-negative number");
  const WavInfo info = parse_wav(wav);

  // Tolerate binary noise in products like 2.0 * 16000 before rounding up.
  const double exact = target_seconds * info.sample_rate;
  const auto target_frames = static_cast<std::uint64_t>(std::ceil(exact - 1e-9 * std::max(1.0, exact)));
  if (info.frames() >= target_frames) return Bytes(wav.begin(), wav.end());

  const std::uint64_t extra_bytes = (target_frames - info.frames()) * info.block_align;
  const std::uint64_t new_size = std::uint64_t{info.data_size} + extra_bytes;
  if (new_size > 0xFFFFFFFFull - 64) fail(ErrorCode::kFormat, "WAV: padded data exceeds 4 GiB");

  const std::size_t data_end = info.data_offset + info.data_size;
  const std::size_t after_data = std::min(wav.size(), data_end + (info.data_size & 1u));

  Bytes out(wav.begin(), wav.begin() + static_cast<std::ptrdiff_t>(data_end));
  const std::uint8_t silence = info.bits_per_sample == 8 ? 0x80 : 0x00;
  out.insert(out.end(), extra_bytes, silence);
  if (new_size & 1u) out.push_back(0);
  out.insert(out.end(), wav.begin() + static_cast<std::ptrdiff_t>(after_data), wav.end());

  put32(out, info.data_offset - 4, static_cast<std::uint32_t>(new_size));
  put32(out, 4, static_cast<std::uint32_t>(out.size() - 8));
  return out;
}

Bytes make_wav(std::uint16_t channels, std::uint32_t sample_rate, std::uint16_t bits_per_sample,
               std::span<const std::uint8_t> pcm) {
  const auto block_align = static_cast<std::uint16_t>(channels * (bits_per_sample / 8));
  Bytes b;
  b.reserve(44 + pcm.size() + 1);
  append_tag(b, "RIFF");
  append32(b, 0);
  append_tag(b, "WAVE");
  append_tag(b, "fmt ");
  append32(b, 16);
  b.resize(b.size() + 16);
  put16(b, 20, kFormatPcm);
  put16(b, 22, channels);
  put32(b, 24, sample_rate);
  put32(b, 28, sample_rate * block_align);
  put16(b, 32, block_align);
  put16(b, 34, bits_per_sample);
  append_tag(b, "data");
  append32(b, static_cast<std::uint32_t>(pcm.size()));
  b.insert(b.end(), pcm.begin(), pcm.end());
  if (pcm.size() & 1u) b.push_back(0);
  put32(b, 4, static_cast<std::uint32_t>(b.size() - 8));
  return b;
}

}  // namespace asrbench
