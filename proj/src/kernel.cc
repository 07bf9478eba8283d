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

#include "cdsat/kernel.h"

#include <algorithm>
#include <sstream>

#include "cdsat/error.h"

namespace cdsat {

std::string_view StatusName(Status status) {
  switch (status) {
    case Status::kSat:
      return "sat";
    case Status::kUnsat:
      return "unsat";
    case Status::kUnknown:
      return "unknown";
  }
  return "?";
}

int FirstUnendorsedInput(const TermStore& store,
                         const std::vector<Assignment>& inputs,
                         const std::vector<std::pair<TermId, Value>>& model) {
  std::unordered_map<TermId, Value> values;
  for (const auto& [t, v] : model) values.emplace(t, v);
  ValueLookup lookup = [&](TermId t) -> const Value* {
    auto it = values.find(t);
    return it == values.end() ? nullptr : &it->second;
  };
  for (size_t i = 0; i < inputs.size(); ++i) {
    std::optional<Value> v = Evaluate(store, inputs[i].term, lookup);
    if (!v || !(*v == inputs[i].value)) return static_cast<int>(i);
  }
  return -1;
}

int FirstUnendorsedInput(const Problem& problem,
                         const std::vector<std::pair<TermId, Value>>& model) {
  return FirstUnendorsedInput(*problem.store, problem.inputs, model);
}

namespace {

std::vector<Assignment> AssignmentsAt(const Trail& trail,
                                      std::span<const int> indices) {
  std::vector<Assignment> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(trail.item(i).assignment);
  return out;
}

}  // namespace

Solver::Solver(Problem problem, SolverConfig config)
    : problem_(std::move(problem)),
      config_(config),
      store_(*problem_.store),
      basis_(problem_) {
  modules_.push_back(MakeBoolModule());
  modules_.push_back(MakeEufModule());
  if (config_.native_lra) modules_.push_back(MakeLraModule());
  if (config_.blackbox_lra) modules_.push_back(MakeBlackBoxLraModule());
  if (config_.proof_mode == ProofMode::kProofTerms) {
    proofs_ = std::make_unique<ProofStore>(problem_);
  } else if (config_.proof_mode == ProofMode::kLcf) {
    lcf_ = std::make_unique<LcfKernel>(problem_);
  }
  PushInputs();
}

Solver::~Solver() = default;

TheoryModule* Solver::ModuleNamed(std::string_view name) const {
  for (const auto& m : modules_) {
    if (m->name() == name) return m.get();
  }
  return nullptr;
}

Solver::Handle Solver::MakeInput(int index) {
  Handle h;
  if (proofs_) h.node = proofs_->Input(index);
  if (lcf_) h.thm = lcf_->Axiom(index);
  return h;
}

Solver::Handle Solver::MakeThy(const Inference& inf) {
  std::vector<Assignment> premises = AssignmentsAt(trail_, inf.premises);
  if (config_.debug_checks &&
      !CheckInference(store_, inf.theory, premises, inf.conclusion)) {
    throw Error(ErrorCode::kInternal,
                "unsound inference " + inf.module + "/" + inf.rule + " to " +
                    AssignmentToString(store_, inf.conclusion));
  }
  Handle h;
  if (proofs_) h.node = proofs_->Thy(inf.module, inf.rule, premises,
                                     inf.conclusion);
  if (lcf_) h.thm = lcf_->Theory(inf.module, std::move(premises),
                                 inf.conclusion);
  return h;
}

Solver::Handle Solver::MakeClash(const Handle& inference,
                                 const Assignment& opp) {
  Handle h;
  if (proofs_) h.node = proofs_->Clash(inference.node, opp);
  if (lcf_) h.thm = lcf_->Clash(*inference.thm, opp);
  return h;
}

Solver::Handle Solver::MakeRes(const Assignment& pivot, const Handle& left,
                               const Handle& right) {
  Handle h;
  if (proofs_) h.node = proofs_->Res(pivot, left.node, right.node);
  if (lcf_) h.thm = lcf_->Resolve(pivot, *left.thm, *right.thm);
  return h;
}

Solver::Handle Solver::MakeEntail(const Assignment& pivot,
                                  const Handle& inner) {
  Handle h;
  if (proofs_) h.node = proofs_->Entail(pivot, inner.node);
  if (lcf_) h.thm = lcf_->Entail(pivot, *inner.thm);
  return h;
}

Solver::Handle Solver::ItemHandle(int index) const {
  Handle h;
  h.node = trail_.item(index).proof;
  if (lcf_) h.thm = item_thms_[index];
  return h;
}

int Solver::Attach(int index, Handle h) {
  trail_.set_proof(index, h.node);
  if (item_thms_.size() <= static_cast<size_t>(index)) {
    item_thms_.resize(index + 1);
  }
  item_thms_[index] = std::move(h.thm);
  return index;
}

void Solver::FinishUnsat(const Handle& root, std::vector<Assignment> refuted) {
  finished_ = true;
  final_ = Transition::kFail;
  result_.status = Status::kUnsat;
  result_.refuted = MakeAssignmentSet(std::move(refuted));
  if (proofs_) result_.proof = proofs_->Extract(root.node);
  if (lcf_) result_.theorem = root.thm;
}

void Solver::PushInputs() {
  for (size_t i = 0; i < problem_.inputs.size(); ++i) {
    const Assignment& a = problem_.inputs[i];
    MakeAssignment(store_, a.term, a.value);
    int index = static_cast<int>(i);
    std::optional<int> existing = trail_.IndexOf(a.term);
    if (!existing) {
      int at = trail_.Append(a, Provenance::Input(index));
      Attach(at, MakeInput(index));
      continue;
    }
    const TrailItem& prior = trail_.item(*existing);
    if (prior.assignment.value == a.value) continue;
    // Two inputs give the same term different values.
    ++stats_.steps;
    ++stats_.conflicts;
    if (a.is_boolean()) {
      Handle root = MakeClash(ItemHandle(*existing), a);
      Trace("conflict", "-", &a, 0, 2);
      FinishUnsat(root, {prior.assignment, a});
      // The clash only names the later input; the earlier one is an axiom.
      result_.refuted = MakeAssignmentSet({a});
    } else {
      // x<-v, x<-w |- (x = x)<-false clashes with |- (x = x)<-true.
      bool rat = store_.sort_kind(store_.sort(a.term)) == SortKind::kRat;
      TheoryId theory = rat ? TheoryId::kLra : TheoryId::kEuf;
      std::string module(TheoryName(theory));
      TermId eq = store_.Eq(a.term, a.term);
      Assignment eq_false = BoolAssignment(eq, false);
      Assignment eq_true = BoolAssignment(eq, true);
      Handle h_false, h_true;
      if (proofs_) {
        h_false.node = proofs_->Thy(module, "eval", {prior.assignment, a},
                                    eq_false);
        h_true.node = proofs_->Thy(module, "eval", {}, eq_true);
      }
      if (lcf_) {
        h_false.thm = lcf_->Theory(module, {prior.assignment, a}, eq_false);
        h_true.thm = lcf_->Theory(module, {}, eq_true);
      }
      Handle clash = MakeClash(h_false, eq_true);
      Handle root = MakeRes(eq_true, clash, h_true);
      Trace("conflict", module, &a, 0, 2);
      FinishUnsat(root, {prior.assignment, a});
    }
    Trace("fail", "-", nullptr, 0, std::nullopt);
    return;
  }
}

void Solver::Trace(std::string_view rule, std::string_view module,
                   const Assignment* a, std::optional<int> level,
                   std::optional<int> conflict_size) {
  if (!config_.trace) return;
  std::ostream& out = *config_.trace;
  out << stats_.steps << '\t' << rule << '\t'
      << (module.empty() ? std::string_view("-") : module) << '\t'
      << (a ? AssignmentToString(store_, *a) : std::string("-")) << '\t';
  if (level) {
    out << *level;
  } else {
    out << '-';
  }
  out << '\t';
  if (conflict_size) {
    out << *conflict_size;
  } else {
    out << '-';
  }
  out << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "failed writing trace");
}

Transition Solver::ApplyInference(const Inference& inf) {
  ++stats_.steps;
  Handle thy = MakeThy(inf);
  std::optional<int> existing = trail_.IndexOf(inf.conclusion.term);
  if (existing) {
    const Assignment& opp = trail_.item(*existing).assignment;
    if (opp == inf.conclusion) {
      throw Error(ErrorCode::kInternal, "inference concludes a trail item");
    }
    Handle clash = MakeClash(thy, opp);
    std::vector<int> elems = inf.premises;
    elems.push_back(*existing);
    conflict_ = MakeConflict(trail_, std::move(elems), clash.node);
    conflict_thm_ = std::move(clash.thm);
    ++stats_.conflicts;
    Trace("conflict", inf.module, &inf.conclusion, conflict_->level,
          static_cast<int>(conflict_->elems.size()));
    return Transition::kConflict;
  }
  int at = trail_.Append(inf.conclusion,
                         Provenance::Deduction(inf.module, inf.theory,
                                               inf.rule, inf.premises));
  Attach(at, std::move(thy));
  Trace("deduce", inf.module, &inf.conclusion, trail_.item(at).level,
        std::nullopt);
  return Transition::kDeduce;
}

std::vector<int> Solver::Restrict(int level) {
  std::vector<int> remap = trail_.RestrictTo(level);
  std::vector<std::optional<Thm>> kept(trail_.size());
  for (size_t old = 0; old < remap.size() && old < item_thms_.size(); ++old) {
    if (remap[old] >= 0) kept[remap[old]] = std::move(item_thms_[old]);
  }
  item_thms_ = std::move(kept);
  ++stats_.restrictions;
  return remap;
}

Transition Solver::Resolve(int latest) {
  ++stats_.steps;
  const TrailItem& item = trail_.item(latest);
  std::vector<int> elems;
  for (int e : conflict_->elems) {
    if (e != latest) elems.push_back(e);
  }
  for (int j : item.provenance.justification) elems.push_back(j);
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Handle left{conflict_->proof, std::move(conflict_thm_)};
  Handle res = MakeRes(item.assignment, left, ItemHandle(latest));
  Assignment pivot = item.assignment;
  conflict_ = MakeConflict(trail_, std::move(elems), res.node);
  conflict_thm_ = std::move(res.thm);
  Trace("resolve", item.provenance.module, &pivot, conflict_->level,
        static_cast<int>(conflict_->elems.size()));
  return Transition::kResolve;
}

Transition Solver::Backjump(int latest) {
  ++stats_.steps;
  Assignment decided = trail_.item(latest).assignment;
  std::vector<int> rest;
  for (int e : conflict_->elems) {
    if (e != latest) rest.push_back(e);
  }
  int level = trail_.LevelOf(rest);
  Handle inner{conflict_->proof, std::move(conflict_thm_)};
  Handle learned_proof = MakeEntail(decided, inner);
  inner.thm.reset();
  conflict_.reset();
  conflict_thm_.reset();
  std::vector<int> remap = Restrict(level);
  for (int& e : rest) e = remap[e];
  Assignment learned = Flip(decided);
  int at = trail_.Append(learned, Provenance::Deduction("Bool", TheoryId::kBool,
                                                        "backjump", rest));
  Attach(at, std::move(learned_proof));
  Trace("backjump", "Bool", &learned, level, std::nullopt);
  return Transition::kBackjump;
}

Transition Solver::UndoClear(int latest) {
  ++stats_.steps;
  const TrailItem& decision = trail_.item(latest);
  Assignment undone = decision.assignment;
  std::string owner_name = decision.provenance.module;
  int level = decision.level;
  ModuleContext ctx{store_, trail_, basis_};
  std::vector<Inference> replay;
  if (TheoryModule* owner = ModuleNamed(owner_name)) {
    replay = owner->ExplainUndo(ctx, *conflict_, latest);
  }
  TheoryModule* euf = ModuleNamed("EUF");
  if (replay.empty() && euf && owner_name != "EUF") {
    replay = euf->ExplainUndo(ctx, *conflict_, latest);
  }
  // Premises are carried as assignments across the restriction.
  struct Pending {
    Inference inf;
    std::vector<Assignment> premises;
  };
  std::vector<Pending> pending;
  for (Inference& inf : replay) {
    bool below = std::all_of(inf.premises.begin(), inf.premises.end(),
                             [&](int p) { return trail_.item(p).level < level; });
    if (!below) continue;
    std::vector<Assignment> premises = AssignmentsAt(trail_, inf.premises);
    pending.push_back({std::move(inf), std::move(premises)});
  }
  conflict_.reset();
  conflict_thm_.reset();
  Restrict(level - 1);
  Trace("undo", owner_name, &undone, level - 1, std::nullopt);
  for (Pending& p : pending) {
    if (trail_.Contains(p.inf.conclusion)) continue;
    std::vector<int> indices;
    bool present = true;
    for (const Assignment& a : p.premises) {
      std::optional<int> i = trail_.IndexOf(a.term);
      if (!i || !(trail_.item(*i).assignment == a)) {
        present = false;
        break;
      }
      indices.push_back(*i);
    }
    if (!present) continue;
    std::sort(indices.begin(), indices.end());
    p.inf.premises = std::move(indices);
    if (ApplyInference(p.inf) == Transition::kConflict) break;
  }
  return Transition::kUndo;
}

Transition Solver::AnalyzeConflict() {
  int latest = trail_.LatestIn(conflict_->elems);
  const TrailItem& item = trail_.item(latest);
  if (conflict_->level == 0) {
    if (item.is_deduction()) return Resolve(latest);
    ++stats_.steps;
    Handle root{conflict_->proof, std::move(conflict_thm_)};
    std::vector<Assignment> refuted = AssignmentsAt(trail_, conflict_->elems);
    int size = static_cast<int>(conflict_->elems.size());
    final_conflict_size_ = size;
    conflict_.reset();
    FinishUnsat(root, std::move(refuted));
    Trace("fail", "-", nullptr, 0, size);
    return Transition::kFail;
  }
  if (item.is_deduction()) return Resolve(latest);
  if (item.assignment.is_boolean()) return Backjump(latest);
  return UndoClear(latest);
}

Transition Solver::Saturated() {
  std::vector<std::pair<TermId, Value>> model;
  for (TermId t : basis_.terms()) {
    if (store_.kind(t) != SymbolKind::kUninterpreted) continue;
    const Value* v = trail_.ValueOf(t);
    if (!v) {
      throw Error(ErrorCode::kInternal,
                  "no module decides " + TermToString(store_, t));
    }
    model.emplace_back(t, *v);
  }
  int bad = FirstUnendorsedInput(problem_, model);
  if (bad >= 0) {
    throw Error(ErrorCode::kInternal,
                "model does not endorse input " + std::to_string(bad));
  }
  finished_ = true;
  final_ = Transition::kSat;
  result_.status = Status::kSat;
  result_.model = std::move(model);
  return Transition::kSat;
}

Transition Solver::Step() {
  if (finished_) return final_;
  if (stats_.steps >= config_.max_steps) {
    finished_ = true;
    final_ = Transition::kStepLimit;
    result_.status = Status::kUnknown;
    result_.reason = "step limit reached";
    return final_;
  }
  Transition t;
  if (conflict_) {
    t = AnalyzeConflict();
  } else {
    basis_.Extend(store_);
    ModuleContext ctx{store_, trail_, basis_};
    std::optional<Inference> inf;
    size_t n = modules_.size();
    for (size_t k = 0; k < n && !inf; ++k) {
      size_t m = (cursor_ + k) % n;
      inf = modules_[m]->Infer(ctx);
      if (inf) cursor_ = (m + 1) % n;
    }
    if (inf) {
      t = ApplyInference(*inf);
    } else {
      std::optional<Assignment> d;
      TheoryModule* decider = nullptr;
      for (const auto& m : modules_) {
        d = m->Decide(ctx);
        if (d) {
          decider = m.get();
          break;
        }
      }
      if (d) {
        ++stats_.steps;
        ++stats_.decisions;
        int at = trail_.Append(
            *d, Provenance::Decision(std::string(decider->name()),
                                     decider->theory()));
        Attach(at, Handle{});
        Trace("decide", decider->name(), &*d, trail_.item(at).level,
              std::nullopt);
        t = Transition::kDecide;
      } else {
        ++stats_.steps;
        t = Saturated();
      }
    }
  }
  AfterTransition();
  return t;
}

void Solver::ForceDecision(const Assignment& a, const std::string& module) {
  MakeAssignment(store_, a.term, a.value);
  std::optional<TheoryId> theory = TheoryOfModule(module);
  if (!theory) throw Error(ErrorCode::kInternal, "unknown module " + module);
  ++stats_.steps;
  ++stats_.decisions;
  int at = trail_.Append(a, Provenance::Decision(module, *theory));
  Attach(at, Handle{});
  Trace("decide", module, &a, trail_.item(at).level, std::nullopt);
  AfterTransition();
}

void Solver::AfterTransition() {
  if (lcf_) {
    long live = lcf_->live_count();
    stats_.lcf_max_live = std::max(stats_.lcf_max_live, live);
    // The refutation theorem is the final conflict's theorem.
    long bound = trail_.size() +
                 (conflict_ ? conflict_->elems.size() : final_conflict_size_);
    if (live > bound) ++stats_.lcf_bound_violations;
  }
  if (!config_.debug_checks) return;
  std::string problem = trail_.CheckInvariants();
  if (!problem.empty()) throw Error(ErrorCode::kInternal, problem);
  std::ostringstream digest;
  for (const TrailItem& item : trail_.items()) {
    digest << item.assignment.term.value() << '='
           << ValueToString(store_, item.assignment.value) << ':'
           << static_cast<int>(item.provenance.kind) << ';';
  }
  if (conflict_) {
    digest << '|';
    for (int e : conflict_->elems) digest << e << ',';
  }
  if (!finished_ && !seen_states_.insert(digest.str()).second) {
    throw Error(ErrorCode::kInternal, "state repeated");
  }
}

SolveResult Solver::TakeResult() {
  SolveResult out = std::move(result_);
  out.stats = stats_;
  result_ = SolveResult{};
  return out;
}

SolveResult Solver::Solve() {
  while (!finished_) Step();
  return TakeResult();
}

SolveResult Solve(const Problem& problem, const SolverConfig& config) {
  Solver solver(problem, config);
  return solver.Solve();
}

}  // namespace cdsat
