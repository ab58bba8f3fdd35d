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

#ifndef LRUDESIGN_MILP_H_
#define LRUDESIGN_MILP_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lrudesign/lp.h"

namespace lrud {

// Linear program where a subset of the variables is binary.
struct MilpModel {
  LpModel lp;
  std::vector<int> binaries;
  // Optional, parallel to binaries. Fractional binaries of the highest
  // priority class are branched on first.
  std::vector<int> priority;

  int AddBinary(double cost);
  int AddContinuous(double lower, double upper, double cost);
  // Throws kInvalidArgument unless every binary has bounds [0, 1].
  void Validate() const;
};

enum class MilpStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kLimitReached,
  kNumericalFailure,
};
std::string_view MilpStatusName(MilpStatus status);

struct MilpOptions {
  std::int64_t node_limit = 50'000'000;
  double time_limit_seconds = kInfinity;
  double relative_gap = 1e-6;        // gap <= relative_gap * (1 + |obj|)
  double integrality_tol = 1e-6;
  // Optional feasible starting point; ignored if infeasible.
  std::optional<std::vector<double>> start;
};

struct MilpSolution {
  MilpStatus status = MilpStatus::kNumericalFailure;
  bool has_incumbent = false;
  std::vector<double> x;
  double objective = kInfinity;
  double bound = -kInfinity;
  std::int64_t nodes = 0;
  std::int64_t lp_iterations = 0;
  double seconds = 0.0;
};

// Best-first branch and bound with depth-first plunging. Branches inside the
// highest fractional priority class on the best pseudocost product score,
// which is the most fractional binary until history exists (lowest index on
// ties); open nodes are ordered by bound, then by creation order.
MilpSolution SolveMilp(const MilpModel& model, const MilpOptions& options = {});

}  // namespace lrud

#endif  // LRUDESIGN_MILP_H_
