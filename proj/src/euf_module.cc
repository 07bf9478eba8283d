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


// Equality with uninterpreted functions, extended with equality at every
// sort (the leading theory). Congruence closure over the basis terms keeps a
// proof forest so every merge can be explained by trail items.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "cdsat/error.h"
#include "cdsat/theory.h"

namespace cdsat {
namespace {

class Closure {
 public:
  explicit Closure(const TermStore& store) : store_(store) {}

  int NodeOf(TermId t) {
    auto it = node_of_term_.find(t);
    if (it != node_of_term_.end()) return it->second;
    for (TermId a : store_.node(t).args) NodeOf(a);
    const int n = NewNode();
    node_of_term_.emplace(t, n);
    term_of_node_[n] = t;
    if (store_.kind(t) == SymbolKind::kUninterpreted &&
        !store_.node(t).args.empty()) {
      apps_.push_back(t);
    }
    return n;
  }

  int ValueNode(const Value& v) {
    for (size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] == v) return value_nodes_[i];
    }
    const int n = NewNode();
    values_.push_back(v);
    value_nodes_.push_back(n);
    value_index_[n] = static_cast<int>(values_.size()) - 1;
    return n;
  }

  bool IsValueNode(int n) const { return value_index_[n] >= 0; }
  const Value& ValueAt(int n) const { return values_[value_index_[n]]; }
  TermId TermAt(int n) const { return term_of_node_[n]; }
  std::optional<int> FindTermNode(TermId t) const {
    auto it = node_of_term_.find(t);
    if (it == node_of_term_.end()) return std::nullopt;
    return it->second;
  }

  int Find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  void MergeItems(int a, int b, std::vector<int> items) {
    Merge(a, b, Reason{std::move(items), TermId(), TermId()});
  }

  void AddDiseq(int a, int b, int item) { diseqs_.push_back({a, b, item}); }

  void Saturate() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::map<std::vector<int>, TermId> table;
      for (TermId app : apps_) {
        const TermNode& n = store_.node(app);
        std::vector<int> key = {n.head.value()};
        for (TermId a : n.args) key.push_back(Find(NodeOf(a)));
        auto [it, fresh] = table.emplace(std::move(key), app);
        if (!fresh) {
          const int x = NodeOf(it->second);
          const int y = NodeOf(app);
          if (Find(x) != Find(y)) {
            Merge(x, y, Reason{{}, it->second, app});
            changed = true;
          }
        }
      }
    }
  }

  // First pair of distinct value nodes sharing a class.
  std::optional<std::pair<int, int>> ValueClash() const {
    std::unordered_map<int, int> seen;
    for (int v : value_nodes_) {
      auto [it, fresh] = seen.emplace(Find(v), v);
      if (!fresh) return std::make_pair(it->second, v);
    }
    return std::nullopt;
  }

  bool Consistent() const {
    if (ValueClash()) return false;
    for (const Diseq& d : diseqs_) {
      if (Find(d.a) == Find(d.b)) return false;
    }
    return true;
  }

  std::optional<int> ClassValueNode(int n) const {
    const int r = Find(n);
    for (int v : value_nodes_) {
      if (Find(v) == r) return v;
    }
    return std::nullopt;
  }

  struct Diseq {
    int a, b, item;
  };
  const std::vector<Diseq>& diseqs() const { return diseqs_; }

  // Unique forest path from a to b, endpoints included; empty if none.
  std::vector<int> Path(int a, int b) const {
    std::vector<int> prev(parent_.size(), -1);
    std::deque<int> queue = {a};
    prev[a] = a;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      if (x == b) break;
      for (const Edge& e : adj_[x]) {
        if (prev[e.other] < 0) {
          prev[e.other] = x;
          queue.push_back(e.other);
        }
      }
    }
    if (prev[b] < 0) return {};
    std::vector<int> path = {b};
    while (path.back() != a) path.push_back(prev[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
  }

  // Trail indices justifying that a and b are in one class.
  std::vector<int> Explain(int a, int b) const {
    std::set<int> out;
    ExplainInto(a, b, out);
    return std::vector<int>(out.begin(), out.end());
  }

 private:
  struct Reason {
    std::vector<int> items;
    TermId cong_left, cong_right;  // valid for congruence edges
  };
  struct Edge {
    int other;
    int reason;
  };

  int NewNode() {
    const int n = static_cast<int>(parent_.size());
    parent_.push_back(n);
    size_.push_back(1);
    adj_.emplace_back();
    term_of_node_.emplace_back();
    value_index_.push_back(-1);
    return n;
  }

  void Merge(int a, int b, Reason reason) {
    int ra = Find(a), rb = Find(b);
    if (ra == rb) return;
    const int r = static_cast<int>(reasons_.size());
    reasons_.push_back(std::move(reason));
    adj_[a].push_back({b, r});
    adj_[b].push_back({a, r});
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    size_[ra] += size_[rb];
  }

  void ExplainInto(int a, int b, std::set<int>& out) const {
    if (a == b) return;
    const std::vector<int> path = Path(a, b);
    if (path.empty()) throw Error(ErrorCode::kInternal, "explaining a non-edge");
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      for (const Edge& e : adj_[path[i]]) {
        if (e.other != path[i + 1]) continue;
        const Reason& r = reasons_[e.reason];
        if (r.cong_left.valid()) {
          const auto& la = store_.node(r.cong_left).args;
          const auto& ra = store_.node(r.cong_right).args;
          for (size_t k = 0; k < la.size(); ++k) {
            ExplainInto(node_of_term_.at(la[k]), node_of_term_.at(ra[k]), out);
          }
        } else {
          out.insert(r.items.begin(), r.items.end());
        }
        break;
      }
    }
  }

  const TermStore& store_;
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<std::vector<Edge>> adj_;
  std::vector<Reason> reasons_;
  std::vector<TermId> term_of_node_;
  std::vector<int> value_index_;
  std::unordered_map<TermId, int> node_of_term_;
  std::vector<Value> values_;
  std::vector<int> value_nodes_;
  std::vector<TermId> apps_;
  std::vector<Diseq> diseqs_;
};

// Closure of the basis under the trail items accepted by `keep`.
Closure BuildClosure(const TermStore& store, const Trail& trail,
                     std::span<const TermId> basis,
                     const std::function<bool(int)>& keep) {
  Closure cc(store);
  for (TermId t : basis) cc.NodeOf(t);
  for (int i = 0; i < trail.size(); ++i) {
    if (!keep(i)) continue;
    const Assignment& a = trail.item(i).assignment;
    const TermNode& n = store.node(a.term);
    if (!a.is_boolean()) {
      cc.MergeItems(cc.NodeOf(a.term), cc.ValueNode(a.value), {i});
    } else if (store.kind(a.term) == SymbolKind::kEq) {
      const int x = cc.NodeOf(n.args[0]);
      const int y = cc.NodeOf(n.args[1]);
      if (a.value.boolean()) {
        cc.MergeItems(x, y, {i});
      } else {
        cc.AddDiseq(x, y, i);
      }
    } else if (store.kind(a.term) == SymbolKind::kUninterpreted) {
      cc.MergeItems(cc.NodeOf(a.term), cc.ValueNode(a.value), {i});
    }
  }
  // Arithmetic terms with known values join their value's class.
  for (TermId t : basis) {
    if (store.sort(t) != store.rat_sort() ||
        !IsArithmeticOperator(store.kind(t))) {
      continue;
    }
    auto ev = EvaluateWithSupport(store, t, [&](TermId leaf) -> const Value* {
      auto i = trail.IndexOf(leaf);
      return i && keep(*i) ? &trail.item(*i).assignment.value : nullptr;
    });
    if (!ev) continue;
    std::vector<int> items;
    for (TermId leaf : ev->support) items.push_back(*trail.IndexOf(leaf));
    cc.MergeItems(cc.NodeOf(t), cc.ValueNode(ev->value), std::move(items));
  }
  cc.Saturate();
  return cc;
}

std::vector<int> Union(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

TermId OrderedEq(TermStore& store, TermId s, TermId t) {
  return s < t ? store.Eq(s, t) : store.Eq(t, s);
}

class EufModule : public TheoryModule {
 public:
  std::string_view name() const override { return "EUF"; }
  TheoryId theory() const override { return TheoryId::kEuf; }

  std::optional<Inference> Infer(ModuleContext& ctx) override {
    TermStore& store = ctx.store;
    const Trail& trail = ctx.trail;
    std::optional<Inference> best;
    auto offer = [&](int tier, const char* rule, std::vector<int> premises,
                     Assignment conclusion) {
      Inference inf{"EUF",
                    TheoryId::kEuf,
                    rule,
                    std::move(premises),
                    std::move(conclusion),
                    tier};
      if (!IsApplicable(trail, inf)) return;
      if (!best || InferenceBefore(inf, *best)) best = std::move(inf);
    };

    const std::vector<TermId> basis(ctx.basis.terms().begin(),
                                    ctx.basis.terms().end());
    Closure cc = BuildClosure(store, trail, basis, [](int) { return true; });

    for (TermId t : basis) {
      if (store.kind(t) != SymbolKind::kEq) continue;
      const TermId s = store.node(t).args[0];
      const TermId u = store.node(t).args[1];
      if (store.sort(s) == store.rat_sort()) continue;  // arithmetic owns it
      auto is = trail.IndexOf(s);
      auto iu = trail.IndexOf(u);
      if (is && iu) {
        const bool equal =
            trail.item(*is).assignment.value == trail.item(*iu).assignment.value;
        std::vector<int> premises = {std::min(*is, *iu), std::max(*is, *iu)};
        premises.erase(std::unique(premises.begin(), premises.end()),
                       premises.end());
        offer(0, "eval", std::move(premises), BoolAssignment(t, equal));
      }
      const int ns = cc.NodeOf(s);
      const int nu = cc.NodeOf(u);
      if (cc.Find(ns) == cc.Find(nu)) {
        offer(1, "congruence", cc.Explain(ns, nu), BoolAssignment(t, true));
        continue;
      }
      for (const auto& d : cc.diseqs()) {
        int x = d.a, y = d.b;
        if (cc.Find(x) == cc.Find(nu)) std::swap(x, y);
        if (cc.Find(x) == cc.Find(ns) && cc.Find(y) == cc.Find(nu)) {
          std::vector<int> premises =
              Union(cc.Explain(ns, x), cc.Explain(nu, y));
          offer(1, "disequality", Union(std::move(premises), {d.item}),
                BoolAssignment(t, false));
          break;
        }
      }
      auto vs = cc.ClassValueNode(ns);
      auto vu = cc.ClassValueNode(nu);
      if (vs && vu && *vs != *vu) {
        offer(1, "distinct-values",
              Union(cc.Explain(ns, *vs), cc.Explain(nu, *vu)),
              BoolAssignment(t, false));
      }
    }

    // Two values forced into one class: name the equality that the values
    // refute, between the nearest valued terms on the forest path.
    if (auto clash = cc.ValueClash()) {
      const std::vector<int> path = cc.Path(clash->first, clash->second);
      size_t second = 1;
      while (!cc.IsValueNode(path[second])) ++second;
      const TermId s = cc.TermAt(path[1]);
      const TermId u = cc.TermAt(path[second - 1]);
      if (s != u) {
        offer(1, "value-merge", cc.Explain(path[1], path[second - 1]),
              BoolAssignment(OrderedEq(store, s, u), true));
      }
    }
    return best;
  }

  std::optional<Assignment> Decide(ModuleContext& ctx) override {
    const TermStore& store = ctx.store;
    const Trail& trail = ctx.trail;
    const std::vector<TermId> basis(ctx.basis.terms().begin(),
                                    ctx.basis.terms().end());
    for (TermId t : basis) {
      const SortId sort = store.sort(t);
      if (store.sort_kind(sort) != SortKind::kUninterpreted) continue;
      if (trail.IndexOf(t)) continue;
      Closure cc = BuildClosure(store, trail, basis, [](int) { return true; });
      if (auto v = cc.ClassValueNode(cc.NodeOf(t))) {
        return Assignment{t, cc.ValueAt(*v)};
      }
      int64_t used = -1;
      for (const TrailItem& item : trail.items()) {
        const Value& v = item.assignment.value;
        if (v.is_abstract() && v.abstract().sort == sort) {
          used = std::max(used, v.abstract().index);
        }
      }
      for (int64_t i = 0; i <= used + 1; ++i) {
        Value v = Value::Abstract(sort, i);
        Closure trial = cc;
        trial.MergeItems(trial.NodeOf(t), trial.ValueNode(v), {});
        trial.Saturate();
        if (trial.Consistent()) return Assignment{t, v};
      }
      throw Error(ErrorCode::kInternal, "no fresh abstract value accepted");
    }
    return std::nullopt;
  }

  // Looks for a term s, valued like the undone decision t by another conflict
  // element, such that the rest of the conflict refutes t = s.
  std::vector<Inference> ExplainUndo(ModuleContext& ctx,
                                     const ConflictState& conflict,
                                     int decision) override {
    TermStore& store = ctx.store;
    const Trail& trail = ctx.trail;
    const Assignment& a = trail.item(decision).assignment;
    if (a.is_boolean()) return {};
    std::vector<int> rest;
    for (int i : conflict.elems) {
      if (i != decision) rest.push_back(i);
    }
    const std::vector<TermId> basis(ctx.basis.terms().begin(),
                                    ctx.basis.terms().end());
    auto keep = [&](int i) {
      return std::binary_search(rest.begin(), rest.end(), i);
    };
    Closure cc = BuildClosure(store, trail, basis, keep);
    for (int i : rest) {
      const Assignment& other = trail.item(i).assignment;
      if (other.is_boolean() || other.term == a.term || other.value != a.value) {
        continue;
      }
      Closure trial = cc;
      trial.MergeItems(trial.NodeOf(a.term), trial.NodeOf(other.term), {});
      trial.Saturate();
      if (trial.Consistent()) continue;
      Inference inf{"EUF",
                    TheoryId::kEuf,
                    "undo-split",
                    rest,
                    BoolAssignment(OrderedEq(store, a.term, other.term), false),
                    1};
      return {std::move(inf)};
    }
    return {};
  }
};

}  // namespace

std::unique_ptr<TheoryModule> MakeEufModule() {
  return std::make_unique<EufModule>();
}

}  // namespace cdsat
