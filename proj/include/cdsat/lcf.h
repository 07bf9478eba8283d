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

#ifndef CDSAT_LCF_H_
#define CDSAT_LCF_H_

#include <atomic>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cdsat/proofs.h"

namespace cdsat {

class LcfKernel;

// A theorem token. Only LcfKernel can create one, so holding a Thm means its
// judgement passed the kernel's checks. No derivation is kept.
class Thm {
 public:
  Thm(const Thm& other);
  Thm(Thm&& other) noexcept;
  Thm& operator=(const Thm& other);
  Thm& operator=(Thm&& other) noexcept;
  ~Thm();

  const Judgement& judgement() const { return *judgement_; }

 private:
  friend class LcfKernel;
  struct Counter {
    std::atomic<long> live{0};
    std::atomic<long> peak{0};
  };

  Thm(std::shared_ptr<const Judgement> judgement,
      std::shared_ptr<Counter> counter);
  void Acquire();
  void Release();

  std::shared_ptr<const Judgement> judgement_;
  std::shared_ptr<Counter> counter_;
};

// The trusted boundary. Every operation throws Error(kKernelRejection) when
// its side condition fails, including on tokens from another kernel.
class LcfKernel {
 public:
  explicit LcfKernel(const Problem& problem);

  Thm Axiom(int input_index);
  Thm Theory(const std::string& module, std::vector<Assignment> premises,
             const Assignment& conclusion);
  Thm Clash(const Thm& inference, const Assignment& opp);
  Thm Resolve(const Assignment& pivot, const Thm& left, const Thm& right);
  Thm Entail(const Assignment& pivot, const Thm& inner);

  // Tokens of this kernel currently alive, and the most ever alive at once.
  long live_count() const { return counter_->live.load(); }
  long peak_count() const { return counter_->peak.load(); }

 private:
  template <typename Rule>
  Thm Make(Rule rule);
  void Own(const Thm& thm) const;

  const Problem& problem_;
  std::shared_ptr<Thm::Counter> counter_;
  std::mutex mutex_;
};

}  // namespace cdsat

#endif  // CDSAT_LCF_H_
