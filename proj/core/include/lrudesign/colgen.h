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

#ifndef LRUDESIGN_COLGEN_H_
#define LRUDESIGN_COLGEN_H_

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lrudesign/cost_model.h"
#include "lrudesign/graph.h"
#include "lrudesign/lp.h"
#include "lrudesign/lpm.h"
#include "lrudesign/milp.h"
#include "lrudesign/structure_checks.h"

namespace lrud {

// Distinct LRU columns with cached omega.
class ColumnPool {
 public:
  // Returns the column index and whether it was new.
  std::pair<int, bool> Add(const VertexSet& q, double omega);
  std::optional<int> Find(const VertexSet& q) const;

  int size() const { return static_cast<int>(columns_.size()); }
  const VertexSet& column(int i) const { return columns_[i]; }
  double omega(int i) const { return omega_[i]; }
  const std::vector<VertexSet>& columns() const { return columns_; }

 private:
  std::vector<VertexSet> columns_;
  std::vector<double> omega_;
  std::map<VertexSet, int> index_;
};

// The set-partitioning relaxation restricted to a pool, kept warm across
// column additions. Starts with every singleton.
class RestrictedMaster {
 public:
  RestrictedMaster(const SystemInstance& inst, const SuccessorSets& h);
  ~RestrictedMaster();

  // Returns false if the column is already present.
  bool AddColumn(const VertexSet& q);
  // Throws kNumericalFailure if the LP cannot be solved.
  FractionalSolution Solve();

  const ColumnPool& pool() const { return pool_; }

 private:
  const SystemInstance* inst_;
  const SuccessorSets* h_;
  ColumnPool pool_;
  LpModel base_;
  std::unique_ptr<SimplexSolver> solver_;
};

// One-shot solve of the restricted master over `pool` (which must cover V).
FractionalSolution SolveRestrictedMaster(const SystemInstance& inst,
                                         const SuccessorSets& h,
                                         std::span<const VertexSet> pool);

enum class PricingMethod { kEnumeration, kMilp, kExhaustive };
std::string_view PricingMethodName(PricingMethod method);

struct PricingResult {
  VertexSet column;
  double reduced_cost = 0.0;
  PricingMethod method = PricingMethod::kEnumeration;
};

inline constexpr int kDefaultEnumerationCap = 25;

// Exact minimum of omega(Q) - sum of duals over connected nonempty Q.
// Ties resolve to the canonically smallest set.
PricingResult PriceEnumeration(const SystemInstance& inst,
                               const SuccessorSets& h,
                               std::span<const double> duals,
                               int cap = kDefaultEnumerationCap);

// Pricing problem with gamma_v, k^e and McCormick products
// eta_ev = k^e gamma_v, delta_uv = gamma_u gamma_v.
class PricingMilp {
 public:
  PricingMilp(const SystemInstance& inst, const SuccessorSets& h,
              std::span<const double> duals);

  const MilpModel& model() const { return model_; }
  int gamma(int v) const { return v; }
  int k(int e) const { return n_ + e; }
  int eta(int e, int v) const { return n_ + m_ + e * n_ + v; }
  int delta(int u, int v) const { return n_ + m_ + m_ * n_ + u * n_ + v; }

  VertexSet Decode(std::span<const double> x) const;

 private:
  int n_ = 0;
  int m_ = 0;
  MilpModel model_;
};

// Solves the pricing MILP; the reduced cost is recomputed from the decoded
// column.
PricingResult PriceMilp(const SystemInstance& inst, const SuccessorSets& h,
                        std::span<const double> duals,
                        const MilpOptions& options = {});

struct ColgenOptions {
  PricingMethod pricing = PricingMethod::kEnumeration;
  int enumeration_cap = kDefaultEnumerationCap;
  int max_iterations = 1'000'000;
  double time_limit_seconds = kInfinity;
  bool certify = false;
};

struct ColgenResult {
  // Partition read off the final basis; set whenever that basis is integral,
  // so an early stop may still carry a feasible (not proven optimal) design.
  std::optional<LruDesign> design;
  FractionalSolution master;  // final restricted-master point
  bool converged = false;
  bool integral = false;
  int iterations = 0;  // pricing rounds
  int columns = 0;     // pool size at the end
  double last_reduced_cost = 0.0;
  std::vector<double> objective_trace;
  std::optional<Certificate> certificate;
  std::string warning;
  double seconds = 0.0;
};

// Column generation from the singleton pool until the minimum reduced cost
// is >= -1e-7 (1 + |objective|). Disconnected instances are solved per
// component. Throws kIntegralityViolation if a converged basis is fractional.
ColgenResult SolveLruDesignColgen(const SystemInstance& inst,
                                  const SuccessorSets& h,
                                  const ColgenOptions& options = {});

}  // namespace lrud

#endif  // LRUDESIGN_COLGEN_H_
