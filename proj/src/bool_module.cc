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


// Propositional module: evaluation of connectives one level at a time,
// downward propagation of connective values, and decisions on the
// non-connective Boolean terms ("atoms") with phase true.

#include <algorithm>

#include "cdsat/theory.h"

namespace cdsat {
namespace {

class BoolModule : public TheoryModule {
 public:
  std::string_view name() const override { return "Bool"; }
  TheoryId theory() const override { return TheoryId::kBool; }

  std::optional<Inference> Infer(ModuleContext& ctx) override {
    const TermStore& store = ctx.store;
    const Trail& trail = ctx.trail;
    std::optional<Inference> best;
    auto offer = [&](int tier, std::string rule, std::vector<int> premises,
                     TermId term, bool value) {
      std::sort(premises.begin(), premises.end());
      premises.erase(std::unique(premises.begin(), premises.end()),
                     premises.end());
      Inference inf{"Bool",           TheoryId::kBool,
                    std::move(rule),  std::move(premises),
                    BoolAssignment(term, value), tier};
      if (!IsApplicable(trail, inf)) return;
      if (!best || InferenceBefore(inf, *best)) best = std::move(inf);
    };
    auto index_of = [&](TermId t) { return trail.IndexOf(t); };
    auto truth = [&](TermId t) -> std::optional<bool> {
      const Value* v = trail.ValueOf(t);
      if (v == nullptr || !v->is_bool()) return std::nullopt;
      return v->boolean();
    };

    for (TermId t : ctx.basis.terms()) {
      const SymbolKind kind = store.kind(t);
      if (!IsConnective(kind)) continue;
      const std::vector<TermId>& args = store.node(t).args;

      if (auto ev = EvalOneLevel(store, trail, t)) {
        offer(0, "eval", std::move(ev->second), t, ev->first);
      }

      auto own = index_of(t);
      if (!own) continue;
      const bool value = *truth(t);
      switch (kind) {
        case SymbolKind::kNot:
          offer(1, "not", {*own}, args[0], !value);
          break;
        case SymbolKind::kOr:
        case SymbolKind::kAnd: {
          // A disjunction assigned true (conjunction assigned false) with all
          // but one argument at the neutral value forces that argument.
          const bool is_or = kind == SymbolKind::kOr;
          const bool absorbing = is_or;
          if (value != absorbing) {
            for (TermId a : args) {
              offer(1, is_or ? "or-false" : "and-true", {*own}, a, value);
            }
            break;
          }
          std::vector<int> premises = {*own};
          int open = -1;
          int open_count = 0;
          for (size_t i = 0; i < args.size(); ++i) {
            auto v = truth(args[i]);
            if (v && *v != absorbing) {
              premises.push_back(*index_of(args[i]));
            } else {
              open = static_cast<int>(i);
              ++open_count;
            }
          }
          if (open_count == 1) {
            offer(1, "unit-prop", std::move(premises), args[open], absorbing);
          }
          break;
        }
        case SymbolKind::kImplies:
          if (!value) {
            offer(1, "implies-false", {*own}, args[0], true);
            offer(1, "implies-false", {*own}, args[1], false);
          } else {
            if (truth(args[0]) == true) {
              offer(1, "modus-ponens", {*own, *index_of(args[0])}, args[1],
                    true);
            }
            if (truth(args[1]) == false) {
              offer(1, "modus-tollens", {*own, *index_of(args[1])}, args[0],
                    false);
            }
          }
          break;
        default:
          break;
      }
    }
    return best;
  }

  std::optional<Assignment> Decide(ModuleContext& ctx) override {
    for (TermId t : ctx.basis.terms()) {
      if (!ctx.store.is_bool(t) || IsConnective(ctx.store.kind(t))) continue;
      if (ctx.trail.IndexOf(t)) continue;
      return BoolAssignment(t, true);
    }
    return std::nullopt;
  }

  std::vector<Inference> ExplainUndo(ModuleContext&, const ConflictState&,
                                     int) override {
    return {};
  }

 private:
  // Value of connective t from its arguments' trail values, with the trail
  // indices of the arguments that determine it.
  static std::optional<std::pair<bool, std::vector<int>>> EvalOneLevel(
      const TermStore& store, const Trail& trail, TermId t) {
    const std::vector<TermId>& args = store.node(t).args;
    auto lookup = [&](TermId a) -> std::optional<std::pair<bool, int>> {
      auto i = trail.IndexOf(a);
      if (!i) return std::nullopt;
      const Value& v = trail.item(*i).assignment.value;
      if (!v.is_bool()) return std::nullopt;
      return std::make_pair(v.boolean(), *i);
    };
    switch (store.kind(t)) {
      case SymbolKind::kTrue:
        return std::make_pair(true, std::vector<int>{});
      case SymbolKind::kFalse:
        return std::make_pair(false, std::vector<int>{});
      case SymbolKind::kNot: {
        auto a = lookup(args[0]);
        if (!a) return std::nullopt;
        return std::make_pair(!a->first, std::vector<int>{a->second});
      }
      case SymbolKind::kAnd:
      case SymbolKind::kOr: {
        const bool absorbing = store.kind(t) == SymbolKind::kOr;
        int decisive = -1;
        std::vector<int> all;
        bool complete = true;
        for (TermId a : args) {
          auto v = lookup(a);
          if (!v) {
            complete = false;
          } else if (v->first == absorbing) {
            if (decisive < 0 || v->second < decisive) decisive = v->second;
          } else {
            all.push_back(v->second);
          }
        }
        if (decisive >= 0) {
          return std::make_pair(absorbing, std::vector<int>{decisive});
        }
        if (!complete) return std::nullopt;
        return std::make_pair(!absorbing, std::move(all));
      }
      case SymbolKind::kImplies: {
        auto a = lookup(args[0]);
        auto b = lookup(args[1]);
        int decisive = -1;
        if (a && !a->first) decisive = a->second;
        if (b && b->first && (decisive < 0 || b->second < decisive)) {
          decisive = b->second;
        }
        if (decisive >= 0) {
          return std::make_pair(true, std::vector<int>{decisive});
        }
        if (a && b) {
          return std::make_pair(false, std::vector<int>{a->second, b->second});
        }
        return std::nullopt;
      }
      default:
        return std::nullopt;
    }
  }
};

}  // namespace

std::unique_ptr<TheoryModule> MakeBoolModule() {
  return std::make_unique<BoolModule>();
}

}  // namespace cdsat
