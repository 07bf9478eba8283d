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

#ifndef CDSAT_PROOF_IO_H_
#define CDSAT_PROOF_IO_H_

#include <optional>
#include <string>
#include <string_view>

#include "cdsat/proofs.h"
#include "cdsat/resolution.h"

namespace cdsat {

// cdsat-pt: a term table followed by one s-expression per node, children
// first, closed by (refutation (inputs ...) <root>).
std::string WriteCdsatProof(const TermStore& store, const RawProof& proof);
// Terms are re-interned in `store`, which must hold the problem's
// declarations. Throws ParseError.
RawProof ReadCdsatProof(std::string_view text, TermStore& store);

// res: one clause per line, see the README for the grammar.
std::string WriteResolutionProof(const TermStore& store,
                                 const ResolutionProof& proof);
ResolutionProof ReadResolutionProof(std::string_view text, TermStore& store);

enum class ProofFormat : uint8_t { kCdsat, kRes };
// By the first non-blank character: '(' is cdsat-pt, anything else res.
ProofFormat DetectProofFormat(std::string_view text);

}  // namespace cdsat

#endif  // CDSAT_PROOF_IO_H_
