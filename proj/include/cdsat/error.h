// Copyright 2026 The CDSAT Kernel Authors
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

#ifndef CDSAT_ERROR_H_
#define CDSAT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cdsat {

enum class ErrorCode {
  kIllSorted,
  kNotBoolean,
  kTermAlreadyAssigned,
  kJustificationOutOfRange,
  kNonBooleanDeduction,
  kEmptyConflict,
  kMalformedNode,
  kUncheckedProof,
  kKernelRejection,
  kUnsupported,
  kTooLarge,
  kSyntaxError,
  kSortError,
  kUndeclaredSymbol,
  kIoError,
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);

// All recoverable failures in the library are reported through this type.
// Kernel bugs (a state where no conflict rule applies, an endorsement failure
// of an extracted model) use kInternal.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse errors carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, int line, int column, const std::string& message)
      : Error(code, std::to_string(line) + ":" + std::to_string(column) +
                        ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace cdsat

#endif  // CDSAT_ERROR_H_
