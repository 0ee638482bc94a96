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

#include "rankcentral/error.hpp"

namespace rankcentral {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kInvalidProbability: return "InvalidProbability";
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kEigensolverNoConvergence: return "EigensolverNoConvergence";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kInvalidDelta: return "InvalidDelta";
    case ErrorCode::kInvalidL: return "InvalidL";
    case ErrorCode::kInvalidScores: return "InvalidScores";
    case ErrorCode::kEdgeMismatch: return "EdgeMismatch";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kBracketInvalid: return "BracketInvalid";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kInvalidConstant: return "InvalidConstant";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kTooManyRetries: return "TooManyRetries";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace rankcentral
