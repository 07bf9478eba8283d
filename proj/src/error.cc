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


#include "cdsat/error.h"

namespace cdsat {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIllSorted:
      return "IllSorted";
    case ErrorCode::kNotBoolean:
      return "NotBoolean";
    case ErrorCode::kTermAlreadyAssigned:
      return "TermAlreadyAssigned";
    case ErrorCode::kJustificationOutOfRange:
      return "JustificationOutOfRange";
    case ErrorCode::kNonBooleanDeduction:
      return "NonBooleanDeduction";
    case ErrorCode::kEmptyConflict:
      return "EmptyConflict";
    case ErrorCode::kMalformedNode:
      return "MalformedNode";
    case ErrorCode::kUncheckedProof:
      return "UncheckedProof";
    case ErrorCode::kKernelRejection:
      return "KernelRejection";
    case ErrorCode::kUnsupported:
      return "Unsupported";
    case ErrorCode::kTooLarge:
      return "TooLarge";
    case ErrorCode::kSyntaxError:
      return "SyntaxError";
    case ErrorCode::kSortError:
      return "SortError";
    case ErrorCode::kUndeclaredSymbol:
      return "UndeclaredSymbol";
    case ErrorCode::kIoError:
      return "IoError";
    case ErrorCode::kInternal:
      return "Internal";
  }
  return "Unknown";
}

}  // namespace cdsat
