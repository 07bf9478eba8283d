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

#include "cdsat/smtlib.h"

#include <fstream>
#include <set>
#include <sstream>

#include "cdsat/error.h"

namespace cdsat {

namespace {

const std::set<std::string, std::less<>>& ReservedNames() {
  static const std::set<std::string, std::less<>> names = {
      "true", "false", "not", "and", "or", "=>", "=", "distinct", "<",
      "<=",   ">",     ">=",  "+",   "-",  "*",  "/", "ite",     "let",
      "abs",  "Bool",  "Real"};
  return names;
}

[[noreturn]] void Fail(ErrorCode code, const SExpr& at, const std::string& msg) {
  throw ParseError(code, at.line, at.col, msg);
}

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::optional<Rational> ParseNumberToken(std::string_view s) {
  if (AllDigits(s)) return Rational(mpz_class(std::string(s)));
  size_t dot = s.find('.');
  if (dot == std::string_view::npos) return std::nullopt;
  std::string_view whole = s.substr(0, dot);
  std::string_view frac = s.substr(dot + 1);
  if (!AllDigits(whole) || !AllDigits(frac)) return std::nullopt;
  mpz_class num(std::string(whole) + std::string(frac));
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  Rational q(num, den);
  q.canonicalize();
  return q;
}

class TermParser {
 public:
  explicit TermParser(TermStore& store) : store_(store) {}

  TermId Parse(const SExpr& e) { return ParseInner(e); }

 private:
  // Attaches the position of the innermost failing subterm.
  TermId ParseInner(const SExpr& e) {
    try {
      return Build(e);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      if (err.code() == ErrorCode::kIllSorted) {
        Fail(ErrorCode::kSortError, e, err.what());
      }
      Fail(err.code(), e, err.what());
    }
  }

  std::vector<TermId> Args(const SExpr& e) {
    std::vector<TermId> out;
    for (size_t i = 1; i < e.items.size(); ++i) {
      out.push_back(ParseInner(e.items[i]));
    }
    return out;
  }

  void NeedArgs(const SExpr& e, size_t at_least, std::string_view op) {
    if (e.items.size() - 1 < at_least) {
      Fail(ErrorCode::kSyntaxError, e,
           std::string(op) + " needs at least " + std::to_string(at_least) +
               " arguments");
    }
  }

  // Builds a conjunction of `rel` over neighbouring arguments.
  TermId Chain(const SExpr& e, const std::vector<TermId>& args,
               TermId (TermStore::*rel)(TermId, TermId), bool swap) {
    std::vector<TermId> parts;
    for (size_t i = 0; i + 1 < args.size(); ++i) {
      parts.push_back(swap ? (store_.*rel)(args[i + 1], args[i])
                           : (store_.*rel)(args[i], args[i + 1]));
    }
    (void)e;
    return store_.And(parts);
  }

  TermId Build(const SExpr& e) {
    if (e.is_atom()) {
      if (e.atom == "true") return store_.True();
      if (e.atom == "false") return store_.False();
      if (auto q = ParseNumberToken(e.atom)) return store_.Numeral(*q);
      auto f = store_.FindFunction(e.atom);
      if (!f) Fail(ErrorCode::kUndeclaredSymbol, e, "undeclared " + e.atom);
      if (!store_.symbol(*f).arg_sorts.empty()) {
        Fail(ErrorCode::kSortError, e, e.atom + " expects arguments");
      }
      return store_.Const(*f);
    }
    if (e.items.empty()) Fail(ErrorCode::kSyntaxError, e, "empty term");
    const SExpr& head = e.items[0];
    if (head.is_list) {
      Fail(ErrorCode::kSyntaxError, head, "operator must be a symbol");
    }
    const std::string& op = head.atom;
    if (op == "/") {
      auto q = ParseRationalLiteral(e);
      if (!q) {
        Fail(ErrorCode::kUnsupported, e, "division is only allowed between "
                                         "rational literals");
      }
      return store_.Numeral(*q);
    }
    if (op == "ite" || op == "let" || op == "forall" || op == "exists") {
      Fail(ErrorCode::kUnsupported, head, op + " is not supported");
    }
    std::vector<TermId> args = Args(e);
    if (op == "not") {
      if (args.size() != 1) Fail(ErrorCode::kSyntaxError, e, "not is unary");
      return store_.Not(args[0]);
    }
    if (op == "and") return store_.And(args);
    if (op == "or") return store_.Or(args);
    if (op == "=>") {
      NeedArgs(e, 2, op);
      TermId t = args.back();
      for (size_t i = args.size() - 1; i-- > 0;) t = store_.Implies(args[i], t);
      return t;
    }
    if (op == "=") {
      NeedArgs(e, 2, op);
      return Chain(e, args, &TermStore::Eq, false);
    }
    if (op == "distinct") {
      NeedArgs(e, 2, op);
      std::vector<TermId> parts;
      for (size_t i = 0; i < args.size(); ++i) {
        for (size_t j = i + 1; j < args.size(); ++j) {
          parts.push_back(store_.Not(store_.Eq(args[i], args[j])));
        }
      }
      return store_.And(parts);
    }
    if (op == "<" || op == "<=" || op == ">" || op == ">=") {
      NeedArgs(e, 2, op);
      bool strict = op == "<" || op == ">";
      bool swap = op[0] == '>';
      return Chain(e, args, strict ? &TermStore::Lt : &TermStore::Le, swap);
    }
    if (op == "+") {
      NeedArgs(e, 1, op);
      return args.size() == 1 ? args[0] : store_.Add(args);
    }
    if (op == "-") {
      NeedArgs(e, 1, op);
      if (args.size() == 1) return store_.Neg(args[0]);
      TermId t = args[0];
      for (size_t i = 1; i < args.size(); ++i) t = store_.Sub(t, args[i]);
      return t;
    }
    if (op == "*") {
      NeedArgs(e, 2, op);
      TermId t = args[0];
      for (size_t i = 1; i < args.size(); ++i) t = store_.Mul(t, args[i]);
      return t;
    }
    auto f = store_.FindFunction(op);
    if (!f) Fail(ErrorCode::kUndeclaredSymbol, head, "undeclared " + op);
    return store_.App(*f, args);
  }

  TermStore& store_;
};

SortId ParseSort(const TermStore& store, const SExpr& e) {
  if (e.is_list) Fail(ErrorCode::kUnsupported, e, "parametric sorts");
  auto s = store.FindSort(e.atom);
  if (!s) Fail(ErrorCode::kSortError, e, "unknown sort " + e.atom);
  return *s;
}

void CheckFreshName(const TermStore& store, const SExpr& e) {
  if (e.is_list) Fail(ErrorCode::kSyntaxError, e, "expected a symbol");
  if (ReservedNames().count(e.atom) > 0 || ParseNumberToken(e.atom) ||
      e.atom.starts_with('"')) {
    Fail(ErrorCode::kSyntaxError, e, e.atom + " cannot be declared");
  }
  if (store.FindFunction(e.atom) || store.FindSort(e.atom)) {
    Fail(ErrorCode::kSortError, e, e.atom + " is already declared");
  }
}

void Arity(const SExpr& e, size_t n) {
  if (e.items.size() != n + 1) {
    Fail(ErrorCode::kSyntaxError, e,
         e.items[0].atom + " takes " + std::to_string(n) + " arguments");
  }
}

}  // namespace

std::optional<Rational> ParseRationalLiteral(const SExpr& e) {
  if (e.is_atom()) return ParseNumberToken(e.atom);
  if (e.items.size() == 2 && e.items[0].IsAtom("-")) {
    auto q = ParseRationalLiteral(e.items[1]);
    if (!q) return std::nullopt;
    return Rational(-*q);
  }
  if (e.items.size() == 3 && e.items[0].IsAtom("/")) {
    auto p = ParseRationalLiteral(e.items[1]);
    auto q = ParseRationalLiteral(e.items[2]);
    if (!p || !q || sgn(*q) == 0) return std::nullopt;
    return Rational(*p / *q);
  }
  return std::nullopt;
}

TermId ParseTerm(TermStore& store, const SExpr& e) {
  return TermParser(store).Parse(e);
}

Value ParseValue(const TermStore& store, const SExpr& e, SortId sort) {
  SortKind kind = store.sort_kind(sort);
  if (kind == SortKind::kBool) {
    if (e.IsAtom("true")) return Value::Bool(true);
    if (e.IsAtom("false")) return Value::Bool(false);
    Fail(ErrorCode::kSortError, e, "expected true or false");
  }
  if (kind == SortKind::kRat) {
    auto q = ParseRationalLiteral(e);
    if (!q) Fail(ErrorCode::kSortError, e, "expected a rational literal");
    return Value::Rat(*q);
  }
  if (e.is_list && e.items.size() == 3 && e.items[0].IsAtom("abs") &&
      e.items[1].is_atom() && e.items[2].is_atom() &&
      AllDigits(e.items[2].atom)) {
    auto s = store.FindSort(e.items[1].atom);
    if (!s || *s != sort) {
      Fail(ErrorCode::kSortError, e.items[1],
           "expected a value of sort " + store.SortName(sort));
    }
    if (e.items[2].atom.size() > 18) {
      Fail(ErrorCode::kUnsupported, e.items[2], "abstract index too large");
    }
    return Value::Abstract(sort, std::stoll(e.items[2].atom));
  }
  Fail(ErrorCode::kSortError, e,
       "expected (abs " + store.SortName(sort) + " <n>)");
}

Script ParseScript(std::string_view text) {
  Script script;
  script.problem.store = std::make_shared<TermStore>();
  TermStore& store = *script.problem.store;
  for (const SExpr& e : ReadSExprs(text)) {
    if (e.is_atom() || e.items.empty() || e.items[0].is_list) {
      Fail(ErrorCode::kSyntaxError, e, "expected a command");
    }
    const std::string& name = e.items[0].atom;
    Command c{CommandKind::kExit, "", {}, SortId(), -1, e.line};
    if (script.check_sat && (name == "assert" || name == "assign" ||
                             name.starts_with("declare-") ||
                             name == "check-sat")) {
      Fail(ErrorCode::kUnsupported, e, name + " after check-sat");
    }
    if (name == "set-logic") {
      Arity(e, 1);
      c.kind = CommandKind::kSetLogic;
      c.name = e.items[1].atom;
    } else if (name == "declare-sort") {
      Arity(e, 2);
      CheckFreshName(store, e.items[1]);
      if (!e.items[2].IsAtom("0")) {
        Fail(ErrorCode::kUnsupported, e.items[2], "sort arity must be 0");
      }
      c.kind = CommandKind::kDeclareSort;
      c.name = e.items[1].atom;
      store.DeclareSort(c.name);
    } else if (name == "declare-const" || name == "declare-fun") {
      bool fun = name == "declare-fun";
      Arity(e, fun ? 3 : 2);
      CheckFreshName(store, e.items[1]);
      c.kind = fun ? CommandKind::kDeclareFun : CommandKind::kDeclareConst;
      c.name = e.items[1].atom;
      if (fun) {
        if (e.items[2].is_atom()) {
          Fail(ErrorCode::kSyntaxError, e.items[2], "expected a sort list");
        }
        for (const SExpr& s : e.items[2].items) {
          c.domain.push_back(ParseSort(store, s));
        }
      }
      c.range = ParseSort(store, e.items.back());
      store.DeclareFunction(c.name, c.domain, c.range);
    } else if (name == "assert") {
      Arity(e, 1);
      TermId t = ParseTerm(store, e.items[1]);
      if (!store.is_bool(t)) {
        Fail(ErrorCode::kSortError, e.items[1], "assertion is not Boolean");
      }
      c.kind = CommandKind::kAssert;
      c.input = static_cast<int>(script.problem.inputs.size());
      script.problem.inputs.push_back(BoolAssignment(t, true));
    } else if (name == "assign") {
      Arity(e, 2);
      TermId t = ParseTerm(store, e.items[1]);
      Value v = ParseValue(store, e.items[2], store.sort(t));
      c.kind = CommandKind::kAssign;
      c.input = static_cast<int>(script.problem.inputs.size());
      script.problem.inputs.push_back(Assignment{t, v});
    } else if (name == "check-sat") {
      Arity(e, 0);
      c.kind = CommandKind::kCheckSat;
      script.check_sat = true;
    } else if (name == "get-model") {
      Arity(e, 0);
      c.kind = CommandKind::kGetModel;
      script.get_model = true;
    } else if (name == "get-proof") {
      Arity(e, 0);
      c.kind = CommandKind::kGetProof;
      script.get_proof = true;
    } else if (name == "exit") {
      Arity(e, 0);
      script.commands.push_back(c);
      break;
    } else {
      Fail(ErrorCode::kUnsupported, e.items[0],
           "unsupported command " + name);
    }
    script.commands.push_back(std::move(c));
  }
  return script;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Script ReadScriptFile(const std::string& path) {
  return ParseScript(ReadFile(path));
}

std::string PrintScript(const Script& script) {
  const TermStore& store = *script.problem.store;
  std::string out;
  for (const Command& c : script.commands) {
    switch (c.kind) {
      case CommandKind::kSetLogic:
        out += "(set-logic " + c.name + ")";
        break;
      case CommandKind::kDeclareSort:
        out += "(declare-sort " + c.name + " 0)";
        break;
      case CommandKind::kDeclareConst:
        out += "(declare-const " + c.name + " " + store.SortName(c.range) + ")";
        break;
      case CommandKind::kDeclareFun: {
        out += "(declare-fun " + c.name + " (";
        for (size_t i = 0; i < c.domain.size(); ++i) {
          if (i > 0) out += ' ';
          out += store.SortName(c.domain[i]);
        }
        out += ") " + store.SortName(c.range) + ")";
        break;
      }
      case CommandKind::kAssert:
        out += "(assert " +
               TermToString(store, script.problem.inputs[c.input].term) + ")";
        break;
      case CommandKind::kAssign: {
        const Assignment& a = script.problem.inputs[c.input];
        out += "(assign " + TermToString(store, a.term) + " " +
               ValueToString(store, a.value) + ")";
        break;
      }
      case CommandKind::kCheckSat:
        out += "(check-sat)";
        break;
      case CommandKind::kGetModel:
        out += "(get-model)";
        break;
      case CommandKind::kGetProof:
        out += "(get-proof)";
        break;
      case CommandKind::kExit:
        out += "(exit)";
        break;
    }
    out += '\n';
  }
  return out;
}

std::string PrintModel(const TermStore& store,
                       const std::vector<std::pair<TermId, Value>>& model) {
  std::string out = "(model";
  for (const auto& [t, v] : model) {
    out += " (define " + TermToString(store, t) + " " +
           ValueToString(store, v) + ")";
  }
  return out + ")";
}

}  // namespace cdsat
