// Copyright 2026 The rankcentral Authors
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

#ifndef RANKCENTRAL_ERROR_HPP_
#define RANKCENTRAL_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace rankcentral {

enum class ErrorCode {
  kIndexOutOfRange,
  kSelfLoop,
  kInvalidProbability,
  kDisconnectedGraph,
  kEigensolverNoConvergence,
  kInvalidK,
  kInvalidDelta,
  kInvalidL,
  kInvalidScores,
  kEdgeMismatch,
  kSingularSystem,
  kBracketInvalid,
  kLengthMismatch,
  kSizeMismatch,
  kInvalidConstant,
  kInvalidConfig,
  kTooManyRetries,
  kParseError,
  kIoFailure,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (CLI, Python, the sweep harness) can react without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rankcentral

#endif  // RANKCENTRAL_ERROR_HPP_
