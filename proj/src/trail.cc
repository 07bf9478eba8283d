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


#include "cdsat/trail.h"

#include <algorithm>

#include "cdsat/error.h"

namespace cdsat {

Provenance Provenance::Deduction(std::string module, TheoryId theory,
                                 std::string rule, std::vector<int> premises) {
  Provenance p;
  p.kind = ProvenanceKind::kDeduction;
  p.module = std::move(module);
  p.theory = theory;
  p.rule = std::move(rule);
  std::sort(premises.begin(), premises.end());
  premises.erase(std::unique(premises.begin(), premises.end()),
                 premises.end());
  p.justification = std::move(premises);
  return p;
}

int Trail::Append(Assignment assignment, Provenance provenance) {
  if (IndexOf(assignment.term).has_value()) {
    throw Error(ErrorCode::kTermAlreadyAssigned,
                "term " + std::to_string(assignment.term.value()) +
                    " already on the trail");
  }
  int level = 0;
  switch (provenance.kind) {
    case ProvenanceKind::kInput:
      level = 0;
      break;
    case ProvenanceKind::kDecision:
      level = max_level_ + 1;
      break;
    case ProvenanceKind::kDeduction:
      if (!assignment.is_boolean()) {
        throw Error(ErrorCode::kNonBooleanDeduction,
                    "deduced assignments must be Boolean");
      }
      for (int j : provenance.justification) {
        if (j < 0 || j >= size()) {
          throw Error(ErrorCode::kJustificationOutOfRange,
                      "justification index " + std::to_string(j));
        }
        level = std::max(level, items_[j].level);
      }
      break;
  }
  const int t = assignment.term.value();
  if (t >= static_cast<int>(by_term_.size())) by_term_.resize(t + 1, -1);
  by_term_[t] = size();
  items_.push_back(
      TrailItem{std::move(assignment), std::move(provenance), level, -1});
  max_level_ = std::max(max_level_, level);
  return size() - 1;
}

std::vector<int> Trail::RestrictTo(int m) {
  std::vector<int> remap(items_.size(), -1);
  std::vector<TrailItem> kept;
  kept.reserve(items_.size());
  std::fill(by_term_.begin(), by_term_.end(), -1);
  max_level_ = 0;
  for (size_t i = 0; i < items_.size(); ++i) {
    TrailItem& item = items_[i];
    if (item.level > m) continue;
    for (int& j : item.provenance.justification) j = remap[j];
    remap[i] = static_cast<int>(kept.size());
    by_term_[item.assignment.term.value()] = remap[i];
    max_level_ = std::max(max_level_, item.level);
    kept.push_back(std::move(item));
  }
  items_ = std::move(kept);
  return remap;
}

bool Trail::FlipPresent(const Assignment& a) const {
  if (!a.is_boolean()) return false;
  const Value* v = ValueOf(a.term);
  return v != nullptr && v->is_bool() && v->boolean() != a.value.boolean();
}

int Trail::LevelOf(std::span<const int> indices) const {
  int level = 0;
  for (int i : indices) level = std::max(level, items_[i].level);
  return level;
}

int Trail::LatestIn(std::span<const int> indices) const {
  if (indices.empty()) {
    throw Error(ErrorCode::kEmptyConflict, "latest element of an empty set");
  }
  return *std::max_element(indices.begin(), indices.end());
}

std::string Trail::CheckInvariants() const {
  int prefix_max = 0;
  std::vector<int> seen;
  for (int i = 0; i < size(); ++i) {
    const TrailItem& item = items_[i];
    const int t = item.assignment.term.value();
    if (t >= static_cast<int>(seen.size())) seen.resize(t + 1, -1);
    if (seen[t] >= 0) {
      return "item " + std::to_string(i) + " reassigns a term of item " +
             std::to_string(seen[t]);
    }
    seen[t] = i;
    if (IndexOf(item.assignment.term) != i) {
      return "term index out of sync at item " + std::to_string(i);
    }
    int expected = 0;
    switch (item.provenance.kind) {
      case ProvenanceKind::kInput:
        expected = 0;
        break;
      case ProvenanceKind::kDecision:
        expected = prefix_max + 1;
        break;
      case ProvenanceKind::kDeduction:
        for (int j : item.provenance.justification) {
          if (j < 0 || j >= i) {
            return "item " + std::to_string(i) +
                   " has a forward or dangling justification";
          }
          expected = std::max(expected, items_[j].level);
        }
        break;
    }
    if (item.level != expected) {
      return "item " + std::to_string(i) + " has level " +
             std::to_string(item.level) + ", expected " +
             std::to_string(expected);
    }
    prefix_max = std::max(prefix_max, item.level);
  }
  if (prefix_max != max_level_) return "cached max level is stale";
  return "";
}

ConflictState MakeConflict(const Trail& trail, std::vector<int> elems,
                           int proof) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  ConflictState c;
  c.level = trail.LevelOf(elems);
  c.elems = std::move(elems);
  c.proof = proof;
  return c;
}

}  // namespace cdsat
