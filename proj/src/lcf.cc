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


#include "cdsat/lcf.h"

#include "cdsat/error.h"

namespace cdsat {

Thm::Thm(std::shared_ptr<const Judgement> judgement,
         std::shared_ptr<Counter> counter)
    : judgement_(std::move(judgement)), counter_(std::move(counter)) {
  Acquire();
}

Thm::Thm(const Thm& other)
    : judgement_(other.judgement_), counter_(other.counter_) {
  Acquire();
}

Thm::Thm(Thm&& other) noexcept
    : judgement_(std::move(other.judgement_)),
      counter_(std::move(other.counter_)) {}

Thm& Thm::operator=(const Thm& other) {
  if (this != &other) {
    Release();
    judgement_ = other.judgement_;
    counter_ = other.counter_;
    Acquire();
  }
  return *this;
}

Thm& Thm::operator=(Thm&& other) noexcept {
  if (this != &other) {
    Release();
    judgement_ = std::move(other.judgement_);
    counter_ = std::move(other.counter_);
  }
  return *this;
}

Thm::~Thm() { Release(); }

void Thm::Acquire() {
  if (!counter_) return;
  const long now = ++counter_->live;
  long peak = counter_->peak.load();
  while (now > peak && !counter_->peak.compare_exchange_weak(peak, now)) {
  }
}

void Thm::Release() {
  if (counter_) --counter_->live;
  counter_.reset();
}

LcfKernel::LcfKernel(const Problem& problem)
    : problem_(problem), counter_(std::make_shared<Thm::Counter>()) {}

template <typename Rule>
Thm LcfKernel::Make(Rule rule) {
  std::lock_guard<std::mutex> lock(mutex_);
  try {
    return Thm(std::make_shared<const Judgement>(rule()), counter_);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kMalformedNode) throw;
    throw Error(ErrorCode::kKernelRejection, e.what());
  }
}

void LcfKernel::Own(const Thm& thm) const {
  if (thm.counter_ != counter_) {
    throw Error(ErrorCode::kKernelRejection, "theorem from another kernel");
  }
}

Thm LcfKernel::Axiom(int input_index) {
  return Make([&] { return InputRule(problem_, input_index); });
}

Thm LcfKernel::Theory(const std::string& module,
                      std::vector<Assignment> premises,
                      const Assignment& conclusion) {
  AssignmentSet set = MakeAssignmentSet(std::move(premises));
  return Make(
      [&] { return TheoryRule(*problem_.store, module, set, conclusion); });
}

Thm LcfKernel::Clash(const Thm& inference, const Assignment& opp) {
  Own(inference);
  return Make([&] { return ClashRule(inference.judgement(), opp); });
}

Thm LcfKernel::Resolve(const Assignment& pivot, const Thm& left,
                       const Thm& right) {
  Own(left);
  Own(right);
  return Make(
      [&] { return ResolveRule(pivot, left.judgement(), right.judgement()); });
}

Thm LcfKernel::Entail(const Assignment& pivot, const Thm& inner) {
  Own(inner);
  return Make([&] { return EntailRule(pivot, inner.judgement()); });
}

}  // namespace cdsat
