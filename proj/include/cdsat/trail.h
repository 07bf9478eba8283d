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

#ifndef CDSAT_TRAIL_H_
#define CDSAT_TRAIL_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cdsat/terms.h"

namespace cdsat {

enum class ProvenanceKind : uint8_t { kInput, kDecision, kDeduction };

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::kInput;
  // Position in Problem::inputs, for inputs.
  int input_index = -1;
  // Producing module name ("Bool", "EUF", "LRA", "BB-LRA") and its theory,
  // for decisions and deductions.
  std::string module;
  TheoryId theory = TheoryId::kBool;
  std::string rule;
  // Trail indices of the premises, ascending; deductions only.
  std::vector<int> justification;

  static Provenance Input(int index) {
    Provenance p;
    p.input_index = index;
    return p;
  }
  static Provenance Decision(std::string module, TheoryId theory) {
    Provenance p;
    p.kind = ProvenanceKind::kDecision;
    p.module = std::move(module);
    p.theory = theory;
    return p;
  }
  static Provenance Deduction(std::string module, TheoryId theory,
                              std::string rule, std::vector<int> premises);
};

struct TrailItem {
  Assignment assignment;
  Provenance provenance;
  int level = 0;
  // Proof node backing this item in the proof store, or -1.
  int proof = -1;

  bool is_input() const { return provenance.kind == ProvenanceKind::kInput; }
  bool is_decision() const {
    return provenance.kind == ProvenanceKind::kDecision;
  }
  bool is_deduction() const {
    return provenance.kind == ProvenanceKind::kDeduction;
  }
};

class Trail {
 public:
  // Returns the index of the new item. Throws kTermAlreadyAssigned,
  // kJustificationOutOfRange, or kNonBooleanDeduction.
  int Append(Assignment assignment, Provenance provenance);

  // Keeps exactly the items of level <= m, in order. Returns the map from old
  // to new indices (-1 for dropped items). Justifications are renumbered.
  std::vector<int> RestrictTo(int m);

  int size() const { return static_cast<int>(items_.size()); }
  bool empty() const { return items_.empty(); }
  const TrailItem& item(int i) const { return items_[i]; }
  const std::vector<TrailItem>& items() const { return items_; }
  void set_proof(int i, int proof) { items_[i].proof = proof; }

  std::optional<int> IndexOf(TermId t) const {
    if (t.value() >= static_cast<int>(by_term_.size())) return std::nullopt;
    int i = by_term_[t.value()];
    if (i < 0) return std::nullopt;
    return i;
  }
  const TrailItem* Lookup(TermId t) const {
    auto i = IndexOf(t);
    return i ? &items_[*i] : nullptr;
  }
  const Value* ValueOf(TermId t) const {
    const TrailItem* item = Lookup(t);
    return item ? &item->assignment.value : nullptr;
  }
  bool Contains(const Assignment& a) const {
    const Value* v = ValueOf(a.term);
    return v != nullptr && *v == a.value;
  }
  // True iff the flip of the Boolean assignment `a` is on the trail.
  bool FlipPresent(const Assignment& a) const;

  int max_level() const { return max_level_; }
  int LevelOf(std::span<const int> indices) const;
  // Largest index in `indices`; throws kEmptyConflict on an empty set.
  int LatestIn(std::span<const int> indices) const;

  // Level laws, single assignment and justification closure. Returns an
  // empty string when they hold.
  std::string CheckInvariants() const;

 private:
  std::vector<TrailItem> items_;
  std::vector<int> by_term_;
  int max_level_ = 0;
};

struct ConflictState {
  std::vector<int> elems;  // ascending trail indices
  int level = 0;
  int proof = -1;
};

ConflictState MakeConflict(const Trail& trail, std::vector<int> elems,
                           int proof);

}  // namespace cdsat

#endif  // CDSAT_TRAIL_H_
