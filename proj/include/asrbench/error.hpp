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

#include <stdexcept>
#include <string>
#include <string_view>

namespace asrbench {

/// Failure categories shared by every module. The numeric values are part of
/// the C ABI (see asrbench.h) and must not be renumbered.
enum class ErrorCode : int {
  kInvalidArgument = 1,   // precondition violation
  kUndefinedMetric = 2,   // WER/MER/rate with an empty denominator
  kInvalidMeasurement = 3,
  kParse = 4,
  kIntegrity = 5,         // dangling or duplicate references in a manifest
  kFormat = 6,            // malformed WAV
  kIo = 7,
  kConfig = 8,            // missing credentials, bad flag combinations
  kDegenerateTest = 9,    // statistics with zero variance or empty margins
  kAuth = 10,
  kTimeout = 11,
  kVendorRejected = 12,
  kTransport = 13,
  kCacheMiss = 14,
  kPartialFailure = 15,
  kInternal = 99,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace asrbench
