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

#ifndef CDSAT_SEXPR_H_
#define CDSAT_SEXPR_H_

#include <string>
#include <string_view>
#include <vector>

namespace cdsat {

struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  int line = 0;
  int col = 0;

  bool is_atom() const { return !is_list; }
  bool IsAtom(std::string_view text) const { return !is_list && atom == text; }
};

// Reads every top-level expression. ';' starts a line comment; "..." and
// |...| are single atoms. Throws ParseError(kSyntaxError).
std::vector<SExpr> ReadSExprs(std::string_view text);

std::string SExprToString(const SExpr& e);

}  // namespace cdsat

#endif  // CDSAT_SEXPR_H_
