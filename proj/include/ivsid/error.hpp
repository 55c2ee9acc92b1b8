// Copyright (c) 2026 The ivsid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
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

namespace ivsid {

enum class ErrorCode {
  kNotFound,
  kUnsupportedFormat,
  kCorruptFile,
  kIoFailure,
  kSignalTooShort,
  kInvalidConfig,
  kEmptySequence,
  kDimensionMismatch,
  kTooFewFrames,
  kEmptyUtterance,
  kTooFewSupervectors,
  kRankDeficient,
  kZeroVector,
  kInvalidThreshold,
  kInvalidProfile,
  kDuplicateTarget,
  kEmptyTargetList,
};

std::string_view ErrorName(ErrorCode code);

// All library failures are reported through this exception type; the code
// lets callers (and the CLI exit-code mapping) branch without string parsing.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view ErrorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kCorruptFile: return "CorruptFile";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kSignalTooShort: return "SignalTooShort";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kEmptySequence: return "EmptySequence";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kTooFewFrames: return "TooFewFrames";
    case ErrorCode::kEmptyUtterance: return "EmptyUtterance";
    case ErrorCode::kTooFewSupervectors: return "TooFewSupervectors";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kInvalidThreshold: return "InvalidThreshold";
    case ErrorCode::kInvalidProfile: return "InvalidProfile";
    case ErrorCode::kDuplicateTarget: return "DuplicateTarget";
    case ErrorCode::kEmptyTargetList: return "EmptyTargetList";
  }
  return "Unknown";
}

}  // namespace ivsid
