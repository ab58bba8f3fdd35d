// Copyright 2026 The lrudesign Authors
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

#ifndef LRUDESIGN_CLRU_H_
#define LRUDESIGN_CLRU_H_

#include <span>
#include <string_view>
#include <vector>

#include "lrudesign/graph.h"
#include "lrudesign/milp.h"

namespace lrud {

// An LRU of the cover variant: the replacement set is removed whenever a
// member of the failure set fails.
struct CoverLru {
  VertexSet replacement;
  VertexSet failure;
  double omega = 0.0;  // lambda(F) * (w(Gamma(R)) + l(R))
};

struct CoverDesign {
  std::vector<CoverLru> lrus;  // canonical order of failure sets
  double total = 0.0;
};

struct CoverSpec {
  VertexSet replacement;
  VertexSet failure;
};

// Throws kFailureOutsideReplacement unless F is a nonempty subset of R.
CoverLru CoverLruCost(const SystemInstance& inst, const SuccessorSets& h,
                      const VertexSet& replacement, const VertexSet& failure);

// Throws kFailureSetsNotPartition unless the failure sets partition V.
CoverDesign ClruCost(const SystemInstance& inst, const SuccessorSets& h,
                     std::span<const CoverSpec> design);

enum class ClruMode {
  kConnected,  // connected failure and replacement sets
  kFullPower,  // any failure and replacement sets
  kMilp,       // slot formulation solved by branch and bound
};
std::string_view ClruModeName(ClruMode mode);

struct ClruOptions {
  ClruMode mode = ClruMode::kConnected;
  int cap = 0;  // 0 picks the mode default: 8 connected, 6 full power
  MilpOptions milp;
};

// Throws kInstanceTooLarge above the cap of the exhaustive modes, or
// kNumericalFailure if the MILP mode ends without a solution.
CoverDesign SolveClru(const SystemInstance& inst, const SuccessorSets& h,
                      const ClruOptions& options = {});

// Slot model: f_vi (v in failure set i), r_vi (v in replacement set i),
// k_ie, and products rho_evi = k_ie f_vi, sigma_uvi = r_ui f_vi.
class ClruEncoding {
 public:
  ClruEncoding(const SystemInstance& inst, const SuccessorSets& h);

  const MilpModel& model() const { return model_; }
  int f(int v, int i) const { return v * n_ + i; }
  int r(int v, int i) const { return n_ * n_ + v * n_ + i; }
  int k(int e, int i) const { return 2 * n_ * n_ + e * n_ + i; }
  int rho(int e, int v, int i) const {
    return 2 * n_ * n_ + m_ * n_ + (e * n_ + v) * n_ + i;
  }
  int sigma(int u, int v, int i) const {
    return 2 * n_ * n_ + m_ * n_ + m_ * n_ * n_ + (u * n_ + v) * n_ + i;
  }

  std::vector<CoverSpec> Decode(std::span<const double> x) const;

 private:
  int n_ = 0;
  int m_ = 0;
  MilpModel model_;
};

}  // namespace lrud

#endif  // LRUDESIGN_CLRU_H_
