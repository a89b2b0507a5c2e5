// Copyright (c) 2026 vpriv authors
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

#include "vpriv/error.h"

namespace vpriv {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoVoicedFrames:
      return "NoVoicedFrames";
    case ErrorCode::kDegenerateSourceStats:
      return "DegenerateSourceStats";
    case ErrorCode::kEmptySpeakerSet:
      return "EmptySpeakerSet";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kZeroVector:
      return "ZeroVector";
    case ErrorCode::kEmptyAfterFilter:
      return "EmptyAfterFilter";
    case ErrorCode::kPoolTooSmall:
      return "PoolTooSmall";
    case ErrorCode::kEmptyPopulation:
      return "EmptyPopulation";
    case ErrorCode::kInvalidSpec:
      return "InvalidSpec";
    case ErrorCode::kInvalidConfig:
      return "InvalidConfig";
    case ErrorCode::kSyntaxError:
      return "SyntaxError";
    case ErrorCode::kInvalidValue:
      return "InvalidValue";
    case ErrorCode::kMissingId:
      return "MissingId";
    case ErrorCode::kIo:
      return "IoError";
  }
  return "Error";
}

}  // namespace vpriv
