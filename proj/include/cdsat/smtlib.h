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

#ifndef CDSAT_SMTLIB_H_
#define CDSAT_SMTLIB_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdsat/sexpr.h"
#include "cdsat/terms.h"

namespace cdsat {

enum class CommandKind : uint8_t {
  kSetLogic,
  kDeclareSort,
  kDeclareConst,
  kDeclareFun,
  kAssert,
  kAssign,
  kCheckSat,
  kGetModel,
  kGetProof,
  kExit,
};

struct Command {
  CommandKind kind;
  std::string name;             // logic, sort or symbol
  std::vector<SortId> domain;   // declare-fun
  SortId range;                 // declare-const, declare-fun
  int input = -1;               // assert, assign: position in the inputs
  int line = 0;
};

struct Script {
  Problem problem;
  std::vector<Command> commands;
  bool check_sat = false;
  bool get_model = false;
  bool get_proof = false;
};

// The QF_UFLRA subset plus `(assign <term> <value>)`. Throws ParseError
// with codes kSyntaxError, kSortError, kUndeclaredSymbol or kUnsupported.
Script ParseScript(std::string_view text);
Script ReadScriptFile(const std::string& path);
std::string PrintScript(const Script& script);

// Term and value syntax over the declarations already in `store`.
TermId ParseTerm(TermStore& store, const SExpr& e);
Value ParseValue(const TermStore& store, const SExpr& e, SortId sort);
// Numerals, decimals, (- q) and (/ p q).
std::optional<Rational> ParseRationalLiteral(const SExpr& e);

std::string PrintModel(const TermStore& store,
                       const std::vector<std::pair<TermId, Value>>& model);

std::string ReadFile(const std::string& path);

}  // namespace cdsat

#endif  // CDSAT_SMTLIB_H_
