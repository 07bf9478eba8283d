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


#include "cdsat/terms.h"

#include <algorithm>
#include <utility>

#include "cdsat/error.h"

namespace cdsat {

std::string RationalToString(const Rational& q) {
  Rational a = abs(q);
  std::string body;
  if (a.get_den() == 1) {
    body = a.get_num().get_str();
  } else {
    body = "(/ " + a.get_num().get_str() + " " + a.get_den().get_str() + ")";
  }
  return sgn(q) < 0 ? "(- " + body + ")" : body;
}

std::string_view TheoryName(TheoryId theory) {
  switch (theory) {
    case TheoryId::kBool:
      return "Bool";
    case TheoryId::kEuf:
      return "EUF";
    case TheoryId::kLra:
      return "LRA";
  }
  return "?";
}

std::optional<TheoryId> TheoryFromName(std::string_view name) {
  if (name == "Bool") return TheoryId::kBool;
  if (name == "EUF") return TheoryId::kEuf;
  if (name == "LRA") return TheoryId::kLra;
  return std::nullopt;
}

bool IsConnective(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::kTrue:
    case SymbolKind::kFalse:
    case SymbolKind::kNot:
    case SymbolKind::kAnd:
    case SymbolKind::kOr:
    case SymbolKind::kImplies:
      return true;
    default:
      return false;
  }
}

bool IsArithmeticOperator(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::kNumeral:
    case SymbolKind::kAdd:
    case SymbolKind::kSub:
    case SymbolKind::kNeg:
    case SymbolKind::kMul:
      return true;
    default:
      return false;
  }
}

bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }

bool operator<(const Value& a, const Value& b) {
  if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index();
  if (a.is_bool()) return a.boolean() < b.boolean();
  if (a.is_rational()) return a.rational() < b.rational();
  return a.abstract() < b.abstract();
}

TermStore::TermStore() {
  sort_names_ = {"Bool", "Real"};
  sort_kinds_ = {SortKind::kBool, SortKind::kRat};
}

SortId TermStore::DeclareSort(const std::string& name) {
  std::lock_guard<std::recursive_mutex> lock(intern_mutex_);
  if (FindSort(name).has_value()) {
    throw Error(ErrorCode::kSortError, "sort already declared: " + name);
  }
  sort_names_.push_back(name);
  sort_kinds_.push_back(SortKind::kUninterpreted);
  return SortId(static_cast<int32_t>(sort_names_.size() - 1));
}

std::optional<SortId> TermStore::FindSort(std::string_view name) const {
  for (size_t i = 0; i < sort_names_.size(); ++i) {
    if (sort_names_[i] == name) return SortId(static_cast<int32_t>(i));
  }
  return std::nullopt;
}

const std::string& TermStore::SortName(SortId sort) const {
  return sort_names_.at(sort.value());
}

SortKind TermStore::sort_kind(SortId sort) const {
  return sort_kinds_.at(sort.value());
}

SymbolId TermStore::AddSymbolEntry(Symbol symbol) {
  symbols_.push_back(std::move(symbol));
  return SymbolId(static_cast<int32_t>(symbols_.size() - 1));
}

SymbolId TermStore::DeclareFunction(const std::string& name,
                                    std::vector<SortId> arg_sorts,
                                    SortId result) {
  std::lock_guard<std::recursive_mutex> lock(intern_mutex_);
  if (functions_.contains(name)) {
    throw Error(ErrorCode::kSortError, "symbol already declared: " + name);
  }
  for (SortId s : arg_sorts) {
    if (!s.valid() || s.value() >= num_sorts()) {
      throw Error(ErrorCode::kIllSorted, "unknown sort in signature of " + name);
    }
  }
  if (!result.valid() || result.value() >= num_sorts()) {
    throw Error(ErrorCode::kIllSorted, "unknown result sort of " + name);
  }
  SymbolId id = AddSymbolEntry(Symbol{SymbolKind::kUninterpreted, name,
                                      std::move(arg_sorts), result,
                                      TheoryId::kEuf, Rational(0)});
  functions_.emplace(name, id);
  return id;
}

std::optional<SymbolId> TermStore::FindFunction(std::string_view name) const {
  auto it = functions_.find(std::string(name));
  if (it == functions_.end()) return std::nullopt;
  return it->second;
}

SymbolId TermStore::Builtin(SymbolKind kind, int arity, SortId arg_sort) {
  std::lock_guard<std::recursive_mutex> lock(intern_mutex_);
  const int64_t key = (static_cast<int64_t>(kind) << 40) |
                      (static_cast<int64_t>(arity) << 20) | arg_sort.value();
  auto it = builtins_.find(key);
  if (it != builtins_.end()) return it->second;

  const SortId b = bool_sort();
  const SortId q = rat_sort();
  Symbol symbol{kind, "", {}, b, TheoryId::kBool, Rational(0)};
  switch (kind) {
    case SymbolKind::kTrue:
      symbol.name = "true";
      break;
    case SymbolKind::kFalse:
      symbol.name = "false";
      break;
    case SymbolKind::kNot:
      symbol.name = "not";
      symbol.arg_sorts = {b};
      break;
    case SymbolKind::kAnd:
    case SymbolKind::kOr:
      symbol.name = kind == SymbolKind::kAnd ? "and" : "or";
      symbol.arg_sorts.assign(arity, b);
      break;
    case SymbolKind::kImplies:
      symbol.name = "=>";
      symbol.arg_sorts = {b, b};
      break;
    case SymbolKind::kEq:
      symbol.name = "=";
      symbol.arg_sorts = {arg_sort, arg_sort};
      symbol.owner = arg_sort == q ? TheoryId::kLra : TheoryId::kEuf;
      break;
    case SymbolKind::kAdd:
      symbol.name = "+";
      symbol.arg_sorts.assign(arity, q);
      symbol.result = q;
      symbol.owner = TheoryId::kLra;
      break;
    case SymbolKind::kSub:
    case SymbolKind::kNeg:
      symbol.name = "-";
      symbol.arg_sorts.assign(arity, q);
      symbol.result = q;
      symbol.owner = TheoryId::kLra;
      break;
    case SymbolKind::kMul:
      symbol.name = "*";
      symbol.arg_sorts = {q, q};
      symbol.result = q;
      symbol.owner = TheoryId::kLra;
      break;
    case SymbolKind::kLt:
    case SymbolKind::kLe:
      symbol.name = kind == SymbolKind::kLt ? "<" : "<=";
      symbol.arg_sorts = {q, q};
      symbol.owner = TheoryId::kLra;
      break;
    case SymbolKind::kNumeral:
    case SymbolKind::kUninterpreted:
      throw Error(ErrorCode::kInternal, "not a keyed builtin");
  }
  SymbolId id = AddSymbolEntry(std::move(symbol));
  builtins_.emplace(key, id);
  return id;
}

SymbolId TermStore::TrueSymbol() {
  return Builtin(SymbolKind::kTrue, 0, bool_sort());
}
SymbolId TermStore::FalseSymbol() {
  return Builtin(SymbolKind::kFalse, 0, bool_sort());
}
SymbolId TermStore::NotSymbol() {
  return Builtin(SymbolKind::kNot, 1, bool_sort());
}
SymbolId TermStore::AndSymbol(int arity) {
  if (arity < 2) throw Error(ErrorCode::kIllSorted, "and needs two arguments");
  return Builtin(SymbolKind::kAnd, arity, bool_sort());
}
SymbolId TermStore::OrSymbol(int arity) {
  if (arity < 2) throw Error(ErrorCode::kIllSorted, "or needs two arguments");
  return Builtin(SymbolKind::kOr, arity, bool_sort());
}
SymbolId TermStore::ImpliesSymbol() {
  return Builtin(SymbolKind::kImplies, 2, bool_sort());
}
SymbolId TermStore::EqSymbol(SortId sort) {
  if (!sort.valid() || sort.value() >= num_sorts()) {
    throw Error(ErrorCode::kIllSorted, "equality over an unknown sort");
  }
  return Builtin(SymbolKind::kEq, 2, sort);
}
SymbolId TermStore::AddSymbol(int arity) {
  if (arity < 2) throw Error(ErrorCode::kIllSorted, "+ needs two arguments");
  return Builtin(SymbolKind::kAdd, arity, rat_sort());
}
SymbolId TermStore::SubSymbol() {
  return Builtin(SymbolKind::kSub, 2, rat_sort());
}
SymbolId TermStore::NegSymbol() {
  return Builtin(SymbolKind::kNeg, 1, rat_sort());
}
SymbolId TermStore::MulSymbol() {
  return Builtin(SymbolKind::kMul, 2, rat_sort());
}
SymbolId TermStore::LtSymbol() {
  return Builtin(SymbolKind::kLt, 2, rat_sort());
}
SymbolId TermStore::LeSymbol() {
  return Builtin(SymbolKind::kLe, 2, rat_sort());
}

SymbolId TermStore::NumeralSymbol(const Rational& value) {
  if (sgn(value) < 0) {
    throw Error(ErrorCode::kIllSorted, "numeral symbols are non-negative");
  }
  std::lock_guard<std::recursive_mutex> lock(intern_mutex_);
  auto it = numerals_.find(value);
  if (it != numerals_.end()) return it->second;
  SymbolId id = AddSymbolEntry(Symbol{SymbolKind::kNumeral,
                                      RationalToString(value),
                                      {},
                                      rat_sort(),
                                      TheoryId::kLra,
                                      value});
  numerals_.emplace(value, id);
  return id;
}

size_t TermStore::KeyHash::operator()(const Key& k) const {
  size_t h = std::hash<int32_t>()(k.head);
  for (int32_t a : k.args) {
    h ^= std::hash<int32_t>()(a) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

TermId TermStore::Intern(SymbolId head, std::span<const TermId> args) {
  std::lock_guard<std::recursive_mutex> lock(intern_mutex_);
  if (!head.valid() || head.value() >= num_symbols()) {
    throw Error(ErrorCode::kIllSorted, "unknown head symbol");
  }
  const Symbol& sym = symbols_[head.value()];
  if (args.size() != sym.arg_sorts.size()) {
    throw Error(ErrorCode::kIllSorted,
                "arity mismatch for " + sym.name + ": expected " +
                    std::to_string(sym.arg_sorts.size()) + ", got " +
                    std::to_string(args.size()));
  }
  Key key{head.value(), {}};
  key.args.reserve(args.size());
  for (size_t i = 0; i < args.size(); ++i) {
    TermId a = args[i];
    if (!a.valid() || a.value() >= num_terms()) {
      throw Error(ErrorCode::kIllSorted, "unknown argument term");
    }
    if (terms_[a.value()].sort != sym.arg_sorts[i]) {
      throw Error(ErrorCode::kIllSorted,
                  "argument " + std::to_string(i + 1) + " of " + sym.name +
                      " has sort " + SortName(terms_[a.value()].sort) +
                      ", expected " + SortName(sym.arg_sorts[i]));
    }
    key.args.push_back(a.value());
  }
  auto it = interned_.find(key);
  if (it != interned_.end()) return it->second;

  bool ground = sym.kind != SymbolKind::kUninterpreted;
  for (TermId a : args) ground = ground && ground_[a.value()];
  if (sym.kind == SymbolKind::kMul && !ground_[args[0].value()] &&
      !ground_[args[1].value()]) {
    throw Error(ErrorCode::kUnsupported,
                "non-linear multiplication: one factor must be a constant");
  }
  TermId id(static_cast<int32_t>(terms_.size()));
  terms_.push_back(
      TermNode{head, std::vector<TermId>(args.begin(), args.end()), sym.result});
  ground_.push_back(ground ? 1 : 0);
  interned_.emplace(std::move(key), id);
  return id;
}

bool TermStore::IsGround(TermId t) const { return ground_.at(t.value()) != 0; }

TermId TermStore::True() { return Intern(TrueSymbol(), {}); }
TermId TermStore::False() { return Intern(FalseSymbol(), {}); }

TermId TermStore::Not(TermId t) {
  TermId args[] = {t};
  return Intern(NotSymbol(), args);
}

TermId TermStore::And(std::span<const TermId> ts) {
  if (ts.empty()) return True();
  if (ts.size() == 1) return ts[0];
  return Intern(AndSymbol(static_cast<int>(ts.size())), ts);
}

TermId TermStore::Or(std::span<const TermId> ts) {
  if (ts.empty()) return False();
  if (ts.size() == 1) return ts[0];
  return Intern(OrSymbol(static_cast<int>(ts.size())), ts);
}

TermId TermStore::Implies(TermId a, TermId b) {
  TermId args[] = {a, b};
  return Intern(ImpliesSymbol(), args);
}

TermId TermStore::Eq(TermId a, TermId b) {
  if (!a.valid() || a.value() >= num_terms()) {
    throw Error(ErrorCode::kIllSorted, "unknown argument term");
  }
  TermId args[] = {a, b};
  return Intern(EqSymbol(sort(a)), args);
}

TermId TermStore::Numeral(const Rational& q) {
  if (sgn(q) < 0) return Neg(Numeral(-q));
  return Intern(NumeralSymbol(q), {});
}

TermId TermStore::Add(std::span<const TermId> ts) {
  if (ts.empty()) return Numeral(0);
  if (ts.size() == 1) return ts[0];
  return Intern(AddSymbol(static_cast<int>(ts.size())), ts);
}

TermId TermStore::Sub(TermId a, TermId b) {
  TermId args[] = {a, b};
  return Intern(SubSymbol(), args);
}

TermId TermStore::Neg(TermId t) {
  TermId args[] = {t};
  return Intern(NegSymbol(), args);
}

TermId TermStore::Mul(TermId a, TermId b) {
  TermId args[] = {a, b};
  return Intern(MulSymbol(), args);
}

TermId TermStore::Lt(TermId a, TermId b) {
  TermId args[] = {a, b};
  return Intern(LtSymbol(), args);
}

TermId TermStore::Le(TermId a, TermId b) {
  TermId args[] = {a, b};
  return Intern(LeSymbol(), args);
}

TermId TermStore::Const(SymbolId symbol) { return Intern(symbol, {}); }

SortId SortOfValue(const TermStore& store, const Value& v) {
  if (v.is_bool()) return store.bool_sort();
  if (v.is_rational()) return store.rat_sort();
  return v.abstract().sort;
}

Assignment MakeAssignment(const TermStore& store, TermId term, Value value) {
  if (!term.valid() || term.value() >= store.num_terms()) {
    throw Error(ErrorCode::kIllSorted, "unknown term in assignment");
  }
  const SortId vs = SortOfValue(store, value);
  if (vs != store.sort(term)) {
    throw Error(ErrorCode::kIllSorted, "value of sort " + store.SortName(vs) +
                                           " assigned to term of sort " +
                                           store.SortName(store.sort(term)));
  }
  if (value.is_abstract() &&
      (store.sort_kind(vs) != SortKind::kUninterpreted ||
       value.abstract().index < 0)) {
    throw Error(ErrorCode::kIllSorted, "malformed abstract value");
  }
  return Assignment{term, std::move(value)};
}

Assignment Flip(const Assignment& a) {
  if (!a.value.is_bool()) {
    throw Error(ErrorCode::kNotBoolean, "flip of a first-order assignment");
  }
  return Assignment{a.term, Value::Bool(!a.value.boolean())};
}

std::string TermToString(const TermStore& store, TermId t) {
  const TermNode& n = store.node(t);
  const Symbol& s = store.symbol(n.head);
  if (n.args.empty()) return s.name;
  std::string out = "(" + s.name;
  for (TermId a : n.args) {
    out += ' ';
    out += TermToString(store, a);
  }
  out += ')';
  return out;
}

std::string ValueToString(const TermStore& store, const Value& v) {
  if (v.is_bool()) return v.boolean() ? "true" : "false";
  if (v.is_rational()) return RationalToString(v.rational());
  return "(abs " + store.SortName(v.abstract().sort) + " " +
         std::to_string(v.abstract().index) + ")";
}

std::string AssignmentToString(const TermStore& store, const Assignment& a) {
  return TermToString(store, a.term) + "<-" + ValueToString(store, a.value);
}

namespace {

class Evaluator {
 public:
  Evaluator(const TermStore& store, const ValueLookup& lookup)
      : store_(store), lookup_(lookup) {}

  // Appends consulted leaves to `support` when it is non-null.
  std::optional<Value> Eval(TermId t, std::vector<TermId>* support) {
    const TermNode& n = store_.node(t);
    const Symbol& s = store_.symbol(n.head);
    switch (s.kind) {
      case SymbolKind::kUninterpreted: {
        const Value* v = lookup_(t);
        if (v == nullptr) return std::nullopt;
        if (support != nullptr) support->push_back(t);
        return *v;
      }
      case SymbolKind::kTrue:
        return Value::Bool(true);
      case SymbolKind::kFalse:
        return Value::Bool(false);
      case SymbolKind::kNumeral:
        return Value::Rat(s.numeral);
      case SymbolKind::kNot: {
        auto v = Eval(n.args[0], support);
        if (!v) return std::nullopt;
        return Value::Bool(!v->boolean());
      }
      case SymbolKind::kAnd:
      case SymbolKind::kOr:
        return EvalJunction(n.args, s.kind == SymbolKind::kOr, support);
      case SymbolKind::kImplies: {
        // a => b is (not a) or b, with a's falsity checked first.
        std::vector<TermId> sa, sb;
        auto a = Eval(n.args[0], support ? &sa : nullptr);
        if (a && !a->boolean()) {
          Append(support, sa);
          return Value::Bool(true);
        }
        auto b = Eval(n.args[1], support ? &sb : nullptr);
        if (b && b->boolean()) {
          Append(support, sb);
          return Value::Bool(true);
        }
        if (a && b) {
          Append(support, sa);
          Append(support, sb);
          return Value::Bool(false);
        }
        return std::nullopt;
      }
      case SymbolKind::kEq: {
        auto a = Eval(n.args[0], support);
        if (!a) return std::nullopt;
        auto b = Eval(n.args[1], support);
        if (!b) return std::nullopt;
        return Value::Bool(*a == *b);
      }
      case SymbolKind::kLt:
      case SymbolKind::kLe: {
        auto a = Eval(n.args[0], support);
        if (!a) return std::nullopt;
        auto b = Eval(n.args[1], support);
        if (!b) return std::nullopt;
        return Value::Bool(s.kind == SymbolKind::kLt
                               ? a->rational() < b->rational()
                               : a->rational() <= b->rational());
      }
      case SymbolKind::kAdd: {
        Rational sum = 0;
        for (TermId a : n.args) {
          auto v = Eval(a, support);
          if (!v) return std::nullopt;
          sum += v->rational();
        }
        return Value::Rat(sum);
      }
      case SymbolKind::kSub: {
        auto a = Eval(n.args[0], support);
        if (!a) return std::nullopt;
        auto b = Eval(n.args[1], support);
        if (!b) return std::nullopt;
        return Value::Rat(a->rational() - b->rational());
      }
      case SymbolKind::kNeg: {
        auto a = Eval(n.args[0], support);
        if (!a) return std::nullopt;
        return Value::Rat(-a->rational());
      }
      case SymbolKind::kMul: {
        auto a = Eval(n.args[0], support);
        if (!a) return std::nullopt;
        auto b = Eval(n.args[1], support);
        if (!b) return std::nullopt;
        return Value::Rat(a->rational() * b->rational());
      }
    }
    return std::nullopt;
  }

 private:
  static void Append(std::vector<TermId>* out, const std::vector<TermId>& in) {
    if (out != nullptr) out->insert(out->end(), in.begin(), in.end());
  }

  // The earliest argument with the absorbing value decides the result.
  std::optional<Value> EvalJunction(const std::vector<TermId>& args,
                                    bool absorbing,
                                    std::vector<TermId>* support) {
    std::vector<TermId> all;
    bool complete = true;
    for (TermId a : args) {
      std::vector<TermId> local;
      auto v = Eval(a, support ? &local : nullptr);
      if (!v) {
        complete = false;
        continue;
      }
      if (v->boolean() == absorbing) {
        Append(support, local);
        return Value::Bool(absorbing);
      }
      all.insert(all.end(), local.begin(), local.end());
    }
    if (!complete) return std::nullopt;
    Append(support, all);
    return Value::Bool(!absorbing);
  }

  const TermStore& store_;
  const ValueLookup& lookup_;
};

}  // namespace

std::optional<Value> Evaluate(const TermStore& store, TermId t,
                              const ValueLookup& lookup) {
  return Evaluator(store, lookup).Eval(t, nullptr);
}

std::optional<Evaluation> EvaluateWithSupport(const TermStore& store, TermId t,
                                              const ValueLookup& lookup) {
  std::vector<TermId> support;
  auto v = Evaluator(store, lookup).Eval(t, &support);
  if (!v) return std::nullopt;
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  return Evaluation{std::move(*v), std::move(support)};
}

Basis::Basis(const Problem& problem) {
  for (const Assignment& a : problem.inputs) Add(*problem.store, a.term);
  Extend(*problem.store);
}

void Basis::Add(const TermStore& store, TermId root) {
  std::vector<TermId> stack = {root};
  while (!stack.empty()) {
    TermId t = stack.back();
    stack.pop_back();
    if (contains(t)) continue;
    if (t.value() >= static_cast<int>(member_.size())) {
      member_.resize(t.value() + 1, false);
    }
    member_[t.value()] = true;
    order_.push_back(t);
    const auto& args = store.node(t).args;
    for (auto it = args.rbegin(); it != args.rend(); ++it) stack.push_back(*it);
  }
}

void Basis::Extend(const TermStore& store) {
  for (; scanned_ < store.num_terms(); ++scanned_) {
    TermId t(scanned_);
    if (!contains(t)) {
      if (t.value() >= static_cast<int>(member_.size())) {
        member_.resize(t.value() + 1, false);
      }
      member_[t.value()] = true;
      order_.push_back(t);
    }
  }
}

std::vector<TermId> RelevantBasis(const Problem& problem) {
  Basis basis(problem);
  return std::vector<TermId>(basis.terms().begin(), basis.terms().end());
}

}  // namespace cdsat
