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

#include "cdsat/gen.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "cdsat/error.h"

namespace cdsat {

std::optional<Family> FamilyFromName(std::string_view name) {
  if (name == "bool") return Family::kBool;
  if (name == "lra") return Family::kLra;
  if (name == "euf") return Family::kEuf;
  return std::nullopt;
}

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kBool:
      return "bool";
    case Family::kLra:
      return "lra";
    case Family::kEuf:
      return "euf";
  }
  return "?";
}

std::string_view OracleVerdictName(OracleVerdict v) {
  return v == OracleVerdict::kSat ? "sat" : "unsat";
}

namespace {

// Bounded draws by modulo keep the stream identical across standard
// libraries, unlike the distribution classes.
class Draw {
 public:
  Draw(uint64_t seed, int index) {
    std::seed_seq seq{static_cast<uint32_t>(seed),
                      static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(index)};
    rng_.seed(seq);
  }
  int Below(int n) { return static_cast<int>(rng_() % static_cast<uint64_t>(n)); }
  int Between(int lo, int hi) { return lo + Below(hi - lo + 1); }
  bool Chance(int percent) { return Below(100) < percent; }

 private:
  std::mt19937_64 rng_;
};

std::string Clauses(Draw& d, const std::vector<std::string>& atoms, int count,
                    int max_width) {
  std::string out;
  for (int c = 0; c < count; ++c) {
    int width = d.Between(1, max_width);
    std::vector<std::string> lits;
    for (int i = 0; i < width; ++i) {
      const std::string& a = atoms[d.Below(static_cast<int>(atoms.size()))];
      lits.push_back(d.Chance(50) ? a : "(not " + a + ")");
    }
    if (lits.size() == 1) {
      out += "(assert " + lits[0] + ")\n";
    } else if (lits.size() == 2 && d.Chance(20)) {
      out += "(assert (=> " + lits[0] + " " + lits[1] + "))\n";
    } else {
      out += "(assert (or";
      for (const std::string& l : lits) out += " " + l;
      out += "))\n";
    }
  }
  return out;
}

std::string SignedInt(int v) {
  return v < 0 ? "(- " + std::to_string(-v) + ")" : std::to_string(v);
}

std::string BoolScript(Draw& d) {
  int n = d.Between(3, 8);
  int m = d.Between(n, std::min(30, 5 * n));
  std::string out = "(set-logic QF_UF)\n";
  std::vector<std::string> atoms;
  for (int i = 0; i < n; ++i) {
    atoms.push_back("p" + std::to_string(i));
    out += "(declare-const " + atoms.back() + " Bool)\n";
  }
  out += Clauses(d, atoms, m, 3);
  return out;
}

std::string LraScript(Draw& d) {
  int n = d.Between(1, 5);
  std::string out = "(set-logic QF_LRA)\n";
  std::vector<std::string> vars;
  for (int i = 0; i < n; ++i) {
    vars.push_back("x" + std::to_string(i));
    out += "(declare-const " + vars.back() + " Real)\n";
  }
  int num_atoms = d.Between(2, 12);
  std::vector<std::string> atoms;
  for (int a = 0; a < num_atoms; ++a) {
    int width = std::min(n, d.Between(1, 2));
    std::vector<std::string> terms;
    int first = d.Below(n);
    for (int k = 0; k < width; ++k) {
      const std::string& v = vars[(first + k) % n];
      int c = d.Between(-3, 3);
      if (c == 0) c = 1;
      terms.push_back(c == 1 ? v : "(* " + SignedInt(c) + " " + v + ")");
    }
    std::string lhs = terms.size() == 1 ? terms[0]
                                        : "(+ " + terms[0] + " " + terms[1] + ")";
    std::string rhs = SignedInt(d.Between(-5, 5));
    static const char* kRel[] = {"<", "<=", "=", ">=", ">"};
    std::string rel = kRel[d.Below(5)];
    atoms.push_back("(" + rel + " " + lhs + " " + rhs + ")");
  }
  out += Clauses(d, atoms, d.Between(1, 8), 3);
  if (d.Chance(30)) {
    out += "(assign " + vars[d.Below(n)] + " " + SignedInt(d.Between(-3, 3)) +
           ")\n";
  }
  return out;
}

std::string EufScript(Draw& d) {
  std::string out = "(set-logic QF_UF)\n(declare-sort U 0)\n";
  int consts = d.Between(2, 3);
  std::vector<std::string> terms;
  for (int i = 0; i < consts; ++i) {
    terms.push_back(std::string(1, static_cast<char>('a' + i)));
    out += "(declare-const " + terms.back() + " U)\n";
  }
  out += "(declare-fun f (U) U)\n";
  int total = d.Between(consts + 1, 6);
  while (static_cast<int>(terms.size()) < total) {
    std::string t = "(f " + terms[d.Below(static_cast<int>(terms.size()))] + ")";
    if (std::find(terms.begin(), terms.end(), t) == terms.end()) {
      terms.push_back(t);
    }
  }
  std::vector<std::string> atoms;
  int num_atoms = d.Between(2, 8);
  for (int i = 0; i < num_atoms; ++i) {
    int a = d.Below(total);
    int b = d.Below(total - 1);
    if (b >= a) ++b;
    atoms.push_back("(= " + terms[a] + " " + terms[b] + ")");
  }
  out += Clauses(d, atoms, d.Between(1, 8), 2);
  if (d.Chance(25)) {
    out += "(assign " + terms[d.Below(consts)] + " (abs U " +
           std::to_string(d.Below(2)) + "))\n";
  }
  return out;
}

}  // namespace

std::string GenerateScript(Family family, uint64_t seed, int index) {
  Draw d(seed, index);
  std::string body;
  switch (family) {
    case Family::kBool:
      body = BoolScript(d);
      break;
    case Family::kLra:
      body = LraScript(d);
      break;
    case Family::kEuf:
      body = EufScript(d);
      break;
  }
  return body + "(check-sat)\n(get-model)\n(get-proof)\n";
}

namespace {

constexpr int kMaxAtoms = 16;

// --- Arithmetic: a private linearizer and Fourier-Motzkin elimination. ---

struct Row {
  std::map<int, Rational> coef;  // variable term id -> coefficient
  Rational constant;
  bool strict = false;  // sum + constant < 0, else <= 0
};

struct Linear {
  std::map<int, Rational> coef;
  Rational constant;
};

void AddInto(Linear& acc, const Linear& x, const Rational& k) {
  for (const auto& [v, c] : x.coef) {
    acc.coef[v] += k * c;
    if (sgn(acc.coef[v]) == 0) acc.coef.erase(v);
  }
  acc.constant += k * x.constant;
}

Linear Lin(const TermStore& store, TermId t) {
  const TermNode& n = store.node(t);
  const Symbol& s = store.symbol(n.head);
  Linear out;
  switch (s.kind) {
    case SymbolKind::kNumeral:
      out.constant = s.numeral;
      return out;
    case SymbolKind::kAdd:
      for (TermId a : n.args) AddInto(out, Lin(store, a), 1);
      return out;
    case SymbolKind::kSub:
      AddInto(out, Lin(store, n.args[0]), 1);
      AddInto(out, Lin(store, n.args[1]), -1);
      return out;
    case SymbolKind::kNeg:
      AddInto(out, Lin(store, n.args[0]), -1);
      return out;
    case SymbolKind::kMul: {
      Linear a = Lin(store, n.args[0]);
      Linear b = Lin(store, n.args[1]);
      if (!a.coef.empty() && !b.coef.empty()) {
        throw Error(ErrorCode::kUnsupported, "non-linear product");
      }
      if (a.coef.empty()) std::swap(a, b);
      AddInto(out, a, b.constant);
      return out;
    }
    case SymbolKind::kUninterpreted:
      if (!n.args.empty()) {
        throw Error(ErrorCode::kUnsupported,
                    "function application under arithmetic");
      }
      out.coef[t.value()] = 1;
      return out;
    default:
      throw Error(ErrorCode::kUnsupported, "unexpected arithmetic term");
  }
}

Row MakeRow(const Linear& l, bool strict) {
  return Row{l.coef, l.constant, strict};
}

// Scales so the first coefficient has magnitude one, for deduplication.
Row Normalize(Row r) {
  if (r.coef.empty()) return r;
  Rational k = abs(r.coef.begin()->second);
  for (auto& [v, c] : r.coef) c /= k;
  r.constant /= k;
  return r;
}

std::string RowKey(const Row& r) {
  std::string key = r.strict ? "<" : "<=";
  for (const auto& [v, c] : r.coef) {
    key += " " + std::to_string(v) + ":" + c.get_str();
  }
  return key + " c" + r.constant.get_str();
}

bool Feasible(std::vector<Row> rows) {
  while (true) {
    int var = -1;
    for (const Row& r : rows) {
      if (!r.coef.empty()) {
        var = r.coef.begin()->first;
        break;
      }
    }
    for (const Row& r : rows) {
      if (r.coef.empty() &&
          (sgn(r.constant) > 0 || (sgn(r.constant) == 0 && r.strict))) {
        return false;
      }
    }
    if (var < 0) return true;
    std::vector<Row> pos, neg, rest;
    for (Row& r : rows) {
      auto it = r.coef.find(var);
      if (it == r.coef.end()) {
        rest.push_back(std::move(r));
      } else if (sgn(it->second) > 0) {
        pos.push_back(std::move(r));
      } else {
        neg.push_back(std::move(r));
      }
    }
    std::set<std::string> seen;
    for (const Row& r : rest) seen.insert(RowKey(r));
    for (const Row& p : pos) {
      for (const Row& q : neg) {
        Rational a = p.coef.at(var);
        Rational b = -q.coef.at(var);
        Linear l;
        AddInto(l, Linear{p.coef, p.constant}, b);
        AddInto(l, Linear{q.coef, q.constant}, a);
        l.coef.erase(var);
        Row r = Normalize(MakeRow(l, p.strict || q.strict));
        if (seen.insert(RowKey(r)).second) rest.push_back(std::move(r));
      }
    }
    rows = std::move(rest);
  }
}

// Atom facts over linear forms: kind 0 is "<= 0", 1 "< 0", 2 "= 0",
// 3 "!= 0".
struct ArithFact {
  Linear form;
  int kind;
};

bool ArithConsistent(const std::vector<ArithFact>& facts) {
  std::vector<Row> base;
  std::vector<Linear> diseqs;
  for (const ArithFact& f : facts) {
    Linear neg;
    AddInto(neg, f.form, -1);
    switch (f.kind) {
      case 0:
        base.push_back(MakeRow(f.form, false));
        break;
      case 1:
        base.push_back(MakeRow(f.form, true));
        break;
      case 2:
        base.push_back(MakeRow(f.form, false));
        base.push_back(MakeRow(neg, false));
        break;
      default:
        diseqs.push_back(f.form);
    }
  }
  // Each disequality splits into < or >.
  size_t splits = size_t{1} << diseqs.size();
  for (size_t mask = 0; mask < splits; ++mask) {
    std::vector<Row> rows = base;
    for (size_t i = 0; i < diseqs.size(); ++i) {
      Linear l;
      AddInto(l, diseqs[i], (mask >> i) & 1 ? -1 : 1);
      rows.push_back(MakeRow(l, true));
    }
    if (Feasible(std::move(rows))) return true;
  }
  return false;
}

// --- Equality over uninterpreted sorts: a private congruence closure. ---

class Congruence {
 public:
  explicit Congruence(const TermStore& store) : store_(store) {}

  int Node(TermId t) {
    auto it = term_nodes_.find(t.value());
    if (it != term_nodes_.end()) return it->second;
    std::vector<int> args;
    for (TermId a : store_.node(t).args) args.push_back(Node(a));
    int id = NewNode();
    term_nodes_.emplace(t.value(), id);
    apps_.push_back({id, store_.node(t).head.value(), std::move(args)});
    return id;
  }

  // Distinct values get distinct, pairwise-unequal nodes.
  int ValueNode(const std::string& key) {
    auto it = values_.find(key);
    if (it != values_.end()) return it->second;
    int id = NewNode();
    for (const auto& [k, other] : values_) diseqs_.emplace_back(id, other);
    values_.emplace(key, id);
    return id;
  }

  void Merge(int a, int b) { merges_.emplace_back(a, b); }
  void Distinct(int a, int b) { diseqs_.emplace_back(a, b); }

  bool Consistent() {
    for (auto [a, b] : merges_) Union(a, b);
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < apps_.size(); ++i) {
        for (size_t j = i + 1; j < apps_.size(); ++j) {
          const App& x = apps_[i];
          const App& y = apps_[j];
          if (x.head != y.head || x.args.size() != y.args.size() ||
              Find(x.node) == Find(y.node)) {
            continue;
          }
          bool same = true;
          for (size_t k = 0; k < x.args.size() && same; ++k) {
            same = Find(x.args[k]) == Find(y.args[k]);
          }
          if (same) {
            Union(x.node, y.node);
            changed = true;
          }
        }
      }
    }
    for (auto [a, b] : diseqs_) {
      if (Find(a) == Find(b)) return false;
    }
    return true;
  }

 private:
  struct App {
    int node;
    int head;
    std::vector<int> args;
  };

  int NewNode() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int Find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Union(int a, int b) { parent_[Find(a)] = Find(b); }

  const TermStore& store_;
  std::vector<int> parent_;
  std::map<int, int> term_nodes_;
  std::map<std::string, int> values_;
  std::vector<App> apps_;
  std::vector<std::pair<int, int>> merges_;
  std::vector<std::pair<int, int>> diseqs_;
};

bool IsArithAtom(const TermStore& store, TermId t) {
  SymbolKind k = store.kind(t);
  if (k == SymbolKind::kLt || k == SymbolKind::kLe) return true;
  return k == SymbolKind::kEq &&
         store.sort(store.node(t).args[0]) == store.rat_sort();
}

// Whether the subterms of t stay inside one theory.
bool UsesArithmetic(const TermStore& store, TermId t) {
  SymbolKind k = store.kind(t);
  if (IsArithmeticOperator(k) || IsArithAtom(store, t)) return true;
  if (store.sort(t) == store.rat_sort()) return true;
  for (TermId a : store.node(t).args) {
    if (UsesArithmetic(store, a)) return true;
  }
  return false;
}

class Enumerator {
 public:
  explicit Enumerator(const Problem& problem)
      : problem_(problem), store_(*problem.store) {
    for (const Assignment& a : problem.inputs) {
      if (a.is_boolean()) {
        CollectAtoms(a.term);
      } else {
        first_order_.push_back(a);
      }
    }
    if (atoms_.size() > kMaxAtoms) {
      throw Error(ErrorCode::kTooLarge,
                  std::to_string(atoms_.size()) + " atoms");
    }
  }

  OracleVerdict Run() {
    uint64_t total = uint64_t{1} << atoms_.size();
    for (uint64_t mask = 0; mask < total; ++mask) {
      polarity_.clear();
      for (size_t i = 0; i < atoms_.size(); ++i) {
        polarity_[atoms_[i].value()] = (mask >> i) & 1;
      }
      bool ok = true;
      for (const Assignment& a : problem_.inputs) {
        if (a.is_boolean() && Truth(a.term) != a.value.boolean()) {
          ok = false;
          break;
        }
      }
      if (ok && TheoriesConsistent()) return OracleVerdict::kSat;
    }
    return OracleVerdict::kUnsat;
  }

 private:
  void CollectAtoms(TermId t) {
    if (IsConnective(store_.kind(t)) &&
        !(store_.kind(t) == SymbolKind::kTrue ||
          store_.kind(t) == SymbolKind::kFalse)) {
      for (TermId a : store_.node(t).args) CollectAtoms(a);
      return;
    }
    if (store_.kind(t) == SymbolKind::kTrue ||
        store_.kind(t) == SymbolKind::kFalse) {
      return;
    }
    if (std::find(atoms_.begin(), atoms_.end(), t) == atoms_.end()) {
      atoms_.push_back(t);
    }
  }

  bool Truth(TermId t) {
    const TermNode& n = store_.node(t);
    switch (store_.kind(t)) {
      case SymbolKind::kTrue:
        return true;
      case SymbolKind::kFalse:
        return false;
      case SymbolKind::kNot:
        return !Truth(n.args[0]);
      case SymbolKind::kAnd:
        for (TermId a : n.args) {
          if (!Truth(a)) return false;
        }
        return true;
      case SymbolKind::kOr:
        for (TermId a : n.args) {
          if (Truth(a)) return true;
        }
        return false;
      case SymbolKind::kImplies:
        return !Truth(n.args[0]) || Truth(n.args[1]);
      default:
        return polarity_.at(t.value());
    }
  }

  bool TheoriesConsistent() {
    std::vector<ArithFact> arith;
    Congruence cc(store_);
    int top = cc.ValueNode("true");
    int bottom = cc.ValueNode("false");
    for (TermId atom : atoms_) {
      bool value = polarity_.at(atom.value());
      const TermNode& n = store_.node(atom);
      if (UsesArithmetic(store_, atom)) {
        if (!IsArithAtom(store_, atom)) {
          throw Error(ErrorCode::kUnsupported,
                      "atom mixes arithmetic and uninterpreted functions");
        }
        Linear form;
        AddInto(form, Lin(store_, n.args[0]), 1);
        AddInto(form, Lin(store_, n.args[1]), -1);
        SymbolKind k = store_.kind(atom);
        if (k == SymbolKind::kEq) {
          arith.push_back({form, value ? 2 : 3});
        } else if (value) {
          arith.push_back({form, k == SymbolKind::kLe ? 0 : 1});
        } else {
          // not (s <= t) is t - s < 0; not (s < t) is t - s <= 0.
          Linear flipped;
          AddInto(flipped, form, -1);
          arith.push_back({flipped, k == SymbolKind::kLe ? 1 : 0});
        }
      } else if (store_.kind(atom) == SymbolKind::kEq) {
        int a = cc.Node(n.args[0]);
        int b = cc.Node(n.args[1]);
        if (value) {
          cc.Merge(a, b);
        } else {
          cc.Distinct(a, b);
        }
        for (TermId side : n.args) {
          if (store_.is_bool(side)) {
            cc.Node(side);
            TieBoolean(cc, side, top, bottom);
          }
        }
      } else {
        cc.Merge(cc.Node(atom), value ? top : bottom);
      }
    }
    for (const Assignment& a : first_order_) {
      if (a.value.is_rational()) {
        Linear form = Lin(store_, a.term);
        form.constant -= a.value.rational();
        arith.push_back({form, 2});
      } else {
        const AbstractValue& v = a.value.abstract();
        cc.Merge(cc.Node(a.term),
                 cc.ValueNode(std::to_string(v.sort.value()) + "#" +
                              std::to_string(v.index)));
      }
    }
    return ArithConsistent(arith) && cc.Consistent();
  }

  // A Boolean term under an equality takes the polarity it has as an atom.
  void TieBoolean(Congruence& cc, TermId t, int top, int bottom) {
    auto it = polarity_.find(t.value());
    if (it != polarity_.end()) {
      cc.Merge(cc.Node(t), it->second ? top : bottom);
    } else if (store_.kind(t) == SymbolKind::kTrue) {
      cc.Merge(cc.Node(t), top);
    } else if (store_.kind(t) == SymbolKind::kFalse) {
      cc.Merge(cc.Node(t), bottom);
    } else if (IsConnective(store_.kind(t))) {
      throw Error(ErrorCode::kUnsupported, "connective under an equality");
    }
  }

  const Problem& problem_;
  const TermStore& store_;
  std::vector<TermId> atoms_;
  std::vector<Assignment> first_order_;
  std::map<int, bool> polarity_;
};

}  // namespace

OracleVerdict Oracle(const Problem& problem) {
  return Enumerator(problem).Run();
}

}  // namespace cdsat
