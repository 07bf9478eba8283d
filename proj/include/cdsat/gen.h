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

#ifndef CDSAT_GEN_H_
#define CDSAT_GEN_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cdsat/terms.h"

namespace cdsat {

enum class Family : uint8_t { kBool, kLra, kEuf };
std::optional<Family> FamilyFromName(std::string_view name);
std::string_view FamilyName(Family family);

// Script text of problem `index` of the stream selected by `seed`. Equal
// arguments give equal bytes on every platform.
//   bool: 3-8 atoms, at most 30 clauses.
//   lra:  at most 5 rational variables and 12 atoms, sometimes an assign.
//   euf:  one sort, constants and a unary function, at most 6 ground terms.
std::string GenerateScript(Family family, uint64_t seed, int index);

enum class OracleVerdict : uint8_t { kSat, kUnsat };
std::string_view OracleVerdictName(OracleVerdict v);

// Brute force: every polarity vector over the atoms that satisfies the
// Boolean structure is checked by Fourier-Motzkin elimination (arithmetic
// atoms) or congruence closure (equalities over uninterpreted sorts).
// Throws Error(kTooLarge) beyond 16 atoms and Error(kUnsupported) when one
// atom mixes the two theories.
OracleVerdict Oracle(const Problem& problem);

}  // namespace cdsat

#endif  // CDSAT_GEN_H_
