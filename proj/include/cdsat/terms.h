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

#ifndef CDSAT_TERMS_H_
#define CDSAT_TERMS_H_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace cdsat {

using Rational = mpq_class;

// Renders a rational as an SMT-LIB literal: 3, (- 3), (/ 1 2), (- (/ 1 2)).
std::string RationalToString(const Rational& q);

template <typename Tag>
class StrongId {
 public:
  constexpr StrongId() = default;
  constexpr explicit StrongId(int32_t value) : value_(value) {}

  constexpr int32_t value() const { return value_; }
  constexpr bool valid() const { return value_ >= 0; }

  friend constexpr auto operator<=>(StrongId, StrongId) = default;

 private:
  int32_t value_ = -1;
};

struct SortTag {};
struct SymbolTag {};
struct TermTag {};
using SortId = StrongId<SortTag>;
using SymbolId = StrongId<SymbolTag>;
using TermId = StrongId<TermTag>;

enum class TheoryId : uint8_t { kBool, kEuf, kLra };
std::string_view TheoryName(TheoryId theory);
std::optional<TheoryId> TheoryFromName(std::string_view name);

enum class SortKind : uint8_t { kBool, kRat, kUninterpreted };

enum class SymbolKind : uint8_t {
  kTrue,
  kFalse,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kEq,
  kNumeral,
  kAdd,
  kSub,
  kNeg,
  kMul,
  kLt,
  kLe,
  kUninterpreted,
};

bool IsConnective(SymbolKind kind);
bool IsArithmeticOperator(SymbolKind kind);  // numerals, +, -, *

struct Symbol {
  SymbolKind kind;
  std::string name;
  std::vector<SortId> arg_sorts;
  SortId result;
  TheoryId owner;
  Rational numeral;  // kNumeral only; always >= 0
};

struct TermNode {
  SymbolId head;
  std::vector<TermId> args;
  SortId sort;
};

// Extension values. Rationals and abstract values are distinct from any
// constant symbol of the input language.
struct AbstractValue {
  SortId sort;
  int64_t index = 0;
  friend auto operator<=>(const AbstractValue&, const AbstractValue&) = default;
};

class Value {
 public:
  static Value Bool(bool b) { return Value(b); }
  static Value Rat(Rational q) { return Value(std::move(q)); }
  static Value Abstract(SortId sort, int64_t index) {
    return Value(AbstractValue{sort, index});
  }

  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  bool is_abstract() const { return std::holds_alternative<AbstractValue>(v_); }

  bool boolean() const { return std::get<bool>(v_); }
  const Rational& rational() const { return std::get<Rational>(v_); }
  const AbstractValue& abstract() const { return std::get<AbstractValue>(v_); }

  friend bool operator==(const Value& a, const Value& b);
  friend bool operator<(const Value& a, const Value& b);
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

 private:
  explicit Value(bool b) : v_(b) {}
  explicit Value(Rational q) : v_(std::move(q)) {}
  explicit Value(AbstractValue a) : v_(a) {}

  std::variant<bool, Rational, AbstractValue> v_;
};

// The multi-theory term store. Terms are hash-consed: structurally equal
// terms share an id, and the store only grows.
class TermStore {
 public:
  TermStore();
  TermStore(const TermStore&) = delete;
  TermStore& operator=(const TermStore&) = delete;

  SortId bool_sort() const { return SortId(0); }
  SortId rat_sort() const { return SortId(1); }
  SortId DeclareSort(const std::string& name);
  std::optional<SortId> FindSort(std::string_view name) const;
  const std::string& SortName(SortId sort) const;
  SortKind sort_kind(SortId sort) const;
  int num_sorts() const { return static_cast<int>(sort_names_.size()); }

  SymbolId DeclareFunction(const std::string& name,
                           std::vector<SortId> arg_sorts, SortId result);
  std::optional<SymbolId> FindFunction(std::string_view name) const;

  SymbolId TrueSymbol();
  SymbolId FalseSymbol();
  SymbolId NotSymbol();
  SymbolId AndSymbol(int arity);
  SymbolId OrSymbol(int arity);
  SymbolId ImpliesSymbol();
  SymbolId EqSymbol(SortId sort);
  SymbolId NumeralSymbol(const Rational& value);
  SymbolId AddSymbol(int arity);
  SymbolId SubSymbol();
  SymbolId NegSymbol();
  SymbolId MulSymbol();
  SymbolId LtSymbol();
  SymbolId LeSymbol();

  // Throws Error(kIllSorted) on arity or sort mismatch, and
  // Error(kUnsupported) on a product of two non-constant terms.
  TermId Intern(SymbolId head, std::span<const TermId> args);

  TermId True();
  TermId False();
  TermId Not(TermId t);
  TermId And(std::span<const TermId> ts);
  TermId Or(std::span<const TermId> ts);
  TermId Implies(TermId a, TermId b);
  TermId Eq(TermId a, TermId b);
  TermId Numeral(const Rational& q);  // negative q yields (- |q|)
  TermId Add(std::span<const TermId> ts);
  TermId Sub(TermId a, TermId b);
  TermId Neg(TermId t);
  TermId Mul(TermId a, TermId b);
  TermId Lt(TermId a, TermId b);
  TermId Le(TermId a, TermId b);
  TermId Const(SymbolId symbol);
  TermId App(SymbolId symbol, std::span<const TermId> args) {
    return Intern(symbol, args);
  }

  const TermNode& node(TermId t) const { return terms_[t.value()]; }
  const Symbol& symbol(SymbolId s) const { return symbols_[s.value()]; }
  const Symbol& head(TermId t) const { return symbol(node(t).head); }
  SymbolKind kind(TermId t) const { return head(t).kind; }
  SortId sort(TermId t) const { return node(t).sort; }
  bool is_bool(TermId t) const { return sort(t) == bool_sort(); }
  int num_terms() const { return static_cast<int>(terms_.size()); }
  int num_symbols() const { return static_cast<int>(symbols_.size()); }

  // True when the term contains no uninterpreted subterm, so it denotes a
  // fixed value of its sort.
  bool IsGround(TermId t) const;

 private:
  struct Key {
    int32_t head;
    std::vector<int32_t> args;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const;
  };

  SymbolId AddSymbolEntry(Symbol symbol);
  SymbolId Builtin(SymbolKind kind, int arity, SortId arg_sort);

  std::vector<std::string> sort_names_;
  std::vector<SortKind> sort_kinds_;
  std::vector<Symbol> symbols_;
  std::vector<TermNode> terms_;
  std::unordered_map<std::string, SymbolId> functions_;
  // (kind, arity, arg sort) -> symbol, for builtins.
  std::unordered_map<int64_t, SymbolId> builtins_;
  std::map<Rational, SymbolId> numerals_;
  std::unordered_map<Key, TermId, KeyHash> interned_;
  std::vector<int8_t> ground_;
  std::recursive_mutex intern_mutex_;
};

struct Assignment {
  TermId term;
  Value value;

  bool is_boolean() const { return value.is_bool(); }

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.term == b.term && a.value == b.value;
  }
  friend bool operator!=(const Assignment& a, const Assignment& b) {
    return !(a == b);
  }
  friend bool operator<(const Assignment& a, const Assignment& b) {
    if (a.term != b.term) return a.term < b.term;
    return a.value < b.value;
  }
};

// Builds term <- value, checking that the value has the term's sort.
Assignment MakeAssignment(const TermStore& store, TermId term, Value value);
inline Assignment BoolAssignment(TermId term, bool value) {
  return Assignment{term, Value::Bool(value)};
}

// Same term, negated Boolean value. Throws Error(kNotBoolean) on a
// first-order assignment.
Assignment Flip(const Assignment& a);

SortId SortOfValue(const TermStore& store, const Value& v);

std::string TermToString(const TermStore& store, TermId t);
std::string ValueToString(const TermStore& store, const Value& v);
// "term<-value", the compact form used in traces.
std::string AssignmentToString(const TermStore& store, const Assignment& a);

using ValueLookup = std::function<const Value*(TermId)>;

struct Evaluation {
  Value value;
  // Leaf terms whose assigned values were consulted.
  std::vector<TermId> support;
};

// Bottom-up evaluation under a partial assignment. Connectives short-circuit;
// uninterpreted applications are evaluable only through the lookup.
std::optional<Value> Evaluate(const TermStore& store, TermId t,
                              const ValueLookup& lookup);
std::optional<Evaluation> EvaluateWithSupport(const TermStore& store, TermId t,
                                              const ValueLookup& lookup);

struct Problem {
  std::shared_ptr<TermStore> store;
  std::vector<Assignment> inputs;
};

// The decision and propagation universe: subterms of the inputs (input order,
// pre-order, first occurrence), followed by every other term of the store in
// interning order. Extend() picks up terms interned since the last call.
class Basis {
 public:
  explicit Basis(const Problem& problem);

  void Extend(const TermStore& store);
  std::span<const TermId> terms() const { return order_; }
  bool contains(TermId t) const {
    return t.value() < static_cast<int>(member_.size()) && member_[t.value()];
  }

 private:
  void Add(const TermStore& store, TermId root);

  std::vector<TermId> order_;
  std::vector<bool> member_;
  int scanned_ = 0;
};

std::vector<TermId> RelevantBasis(const Problem& problem);

}  // namespace cdsat

template <typename Tag>
struct std::hash<cdsat::StrongId<Tag>> {
  size_t operator()(cdsat::StrongId<Tag> id) const {
    return std::hash<int32_t>()(id.value());
  }
};

#endif  // CDSAT_TERMS_H_
