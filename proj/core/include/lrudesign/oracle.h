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

#ifndef LRUDESIGN_ORACLE_H_
#define LRUDESIGN_ORACLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "lrudesign/colgen.h"
#include "lrudesign/cost_model.h"
#include "lrudesign/graph.h"

namespace lrud {

inline constexpr int kDefaultOracleDesignCap = 13;
inline constexpr int kDefaultOraclePriceCap = 18;

// Optimal partition into connected blocks by dynamic programming over the
// set of unassigned vertices; the block holding the lowest unassigned vertex
// is chosen at each step. Ties go to the canonically smallest partition.
LruDesign OracleOptimalDesign(const SystemInstance& inst,
                              const SuccessorSets& h,
                              int cap = kDefaultOracleDesignCap);

// Minimum reduced cost over all nonempty subsets, connected or not.
PricingResult OraclePrice(const SystemInstance& inst, const SuccessorSets& h,
                          std::span<const double> duals,
                          int cap = kDefaultOraclePriceCap);

// Lexicographic comparison of canonically sorted block lists.
bool PartitionCanonicalLess(std::span<const VertexSet> a,
                            std::span<const VertexSet> b);

// Helpers shared with the cover variant.
namespace internal {

// best[U] = min over blocks B containing the lowest vertex of U with
// block_cost[B] finite of block_cost[B] + best[U \ B]. Returns the blocks of
// the optimal partition of `universe`, canonically ordered, and its cost.
std::vector<std::uint64_t> PartitionDp(int n,
                                       std::span<const double> block_cost,
                                       double* total);

}  // namespace internal

}  // namespace lrud

#endif  // LRUDESIGN_ORACLE_H_
