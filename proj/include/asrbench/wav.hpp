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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "asrbench/util.hpp"

namespace asrbench {

/// Layout of a PCM RIFF/WAVE file. Offsets are byte positions in the file.
struct WavInfo {
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
  std::uint16_t block_align = 0;
  std::size_t data_offset = 0;  // first sample byte
  std::uint32_t data_size = 0;

  std::uint64_t frames() const noexcept {
    return block_align ? data_size / block_align : 0;
  }
  double duration_s() const noexcept {
    return sample_rate ? static_cast<double>(frames()) / sample_rate : 0.0;
  }
};

/// Accepts PCM (format 1, or WAVE_FORMAT_EXTENSIBLE with a PCM subformat)
/// at 8/16/24/32 bits. Throws Error(kFormat) otherwise.
WavInfo parse_wav(std::span<const std::uint8_t> wav);

/// Appends silence so the output lasts at least target_seconds (the frame
/// count is ceil(target * rate)). Inputs already that long are returned
/// unchanged, byte for byte. Chunks after the data chunk are preserved and
/// the RIFF and data sizes are rewritten.
Bytes pad_audio(std::span<const std::uint8_t> wav, double target_seconds);

/// Canonical 44-byte-header PCM file; used by tests and fixtures.
Bytes make_wav(std::uint16_t channels, std::uint32_t sample_rate,
               std::uint16_t bits_per_sample, std::span<const std::uint8_t> pcm);

}  // namespace asrbench
