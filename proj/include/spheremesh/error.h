// Copyright 2026 The SphereMesh Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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

namespace spheremesh {

enum class ErrorCode {
  kContractViolation,
  kOutOfRange,
  kDegenerateTriangle,
  kAmbiguousCircumcenter,
  kDegenerateSeed,
  kDegenerateInput,
  kEmptyIndex,
  kSeedNotFound,
  kEmptyFill,
  kInsetCollision,
  kRecoveryStall,
  kParseError,
  kIoError,
  kConfigError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure surfaced by the library is an Error carrying a code. Outcomes
// that are part of normal flow (duplicate points, filtered candidates) are
// reported through status values instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const { return code_; }
  // The message without the code prefix.
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace spheremesh
