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

#include "asrbench/error.hpp"

namespace asrbench {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kUndefinedMetric: return "undefined-metric";
    case ErrorCode::kInvalidMeasurement: return "invalid-measurement";
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kIntegrity: return "integrity-error";
    case ErrorCode::kFormat: return "format-error";
    case ErrorCode::kIo: return "io-error";
    case ErrorCode::kConfig: return "configuration-error";
    case ErrorCode::kDegenerateTest: return "degenerate-test";
    case ErrorCode::kAuth: return "auth-failure";
    case ErrorCode::kTimeout: return "timeout";
    case ErrorCode::kVendorRejected: return "vendor-rejected";
    case ErrorCode::kTransport: return "transport-error";
    case ErrorCode::kCacheMiss: return "cache-miss";
    case ErrorCode::kPartialFailure: return "partial-failure";
    case ErrorCode::kInternal: return "internal-error";
  }
  return "unknown";
}

}  // namespace asrbench
