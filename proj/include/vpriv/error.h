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

#ifndef VPRIV_ERROR_H_
#define VPRIV_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vpriv {

enum class ErrorCode {
  kNoVoicedFrames,
  kDegenerateSourceStats,
  kEmptySpeakerSet,
  kDimensionMismatch,
  kZeroVector,
  kEmptyAfterFilter,
  kPoolTooSmall,
  kEmptyPopulation,
  kInvalidSpec,
  kInvalidConfig,
  kSyntaxError,
  kInvalidValue,
  kMissingId,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this type; callers that need to
// distinguish failure modes switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const { return code_; }
  // what() without the error-code prefix.
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

// Raised by the text parsers. line is 1-based; column is the 1-based byte
// offset of the offending token within the line (0 when not applicable).
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column,
             const std::string& message)
      : Error(code, "line " + std::to_string(line) +
                        (column ? ", column " + std::to_string(column) : "") +
                        ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace vpriv

#endif  // VPRIV_ERROR_H_
