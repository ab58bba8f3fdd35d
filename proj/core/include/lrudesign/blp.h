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

#ifndef LRUDESIGN_BLP_H_
#define LRUDESIGN_BLP_H_

#include <optional>
#include <span>
#include <vector>

#include "lrudesign/cost_model.h"
#include "lrudesign/graph.h"
#include "lrudesign/milp.h"

namespace lrud {

struct BlpOptions {
  // Vertex j may only use slots i <= j (0-based). Off reproduces the plain
  // slot formulation.
  bool symmetry_breaking = true;
};

// Slot formulation with y_vi (v in slot i), k_ie (edge e broken for slot i),
// rho_evi = k_ie * y_vi and sigma_uvi = y_ui * y_vi linearized with three
// McCormick rows each.
class BlpEncoding {
 public:
  BlpEncoding(const SystemInstance& inst, const SuccessorSets& h,
              BlpOptions options = {});

  const MilpModel& model() const { return model_; }
  int num_slots() const { return n_; }
  bool symmetry_breaking() const { return options_.symmetry_breaking; }

  int y(int v, int i) const { return v * n_ + i; }
  int k(int e, int i) const { return n_ * n_ + e * n_ + i; }
  int rho(int e, int v, int i) const {
    return n_ * n_ + m_ * n_ + (e * n_ + v) * n_ + i;
  }
  int sigma(int u, int v, int i) const {
    return n_ * n_ + m_ * n_ + m_ * n_ * n_ + (u * n_ + v) * n_ + i;
  }

  int num_partition_rows() const { return partition_rows_; }
  int num_precedence_rows() const { return precedence_rows_; }
  int num_mccormick_rows() const { return mccormick_rows_; }
  int num_symmetry_rows() const { return symmetry_rows_; }

  // Indicator vector of a partition, slots assigned in canonical block order.
  std::vector<double> Encode(std::span<const VertexSet> partition) const;
  // Nonempty slots as vertex sets, canonical order.
  std::vector<VertexSet> Decode(std::span<const double> x) const;

 private:
  const SystemInstance* inst_;
  const SuccessorSets* h_;
  BlpOptions options_;
  int n_ = 0;
  int m_ = 0;
  MilpModel model_;
  int partition_rows_ = 0;
  int precedence_rows_ = 0;
  int mccormick_rows_ = 0;
  int symmetry_rows_ = 0;
};

struct BlpResult {
  MilpStatus status = MilpStatus::kNumericalFailure;
  std::optional<LruDesign> design;  // best decoded design, if any
  double objective = kInfinity;
  double bound = -kInfinity;
  std::int64_t nodes = 0;
  double seconds = 0.0;
};

struct BlpSolveOptions {
  MilpOptions milp;
  // Seed the search with the all-singleton design as a first incumbent.
  bool singleton_start = true;
};

BlpResult SolveBlp(const BlpEncoding& enc, const SystemInstance& inst,
                   const SuccessorSets& h, const BlpSolveOptions& options = {});

}  // namespace lrud

#endif  // LRUDESIGN_BLP_H_
