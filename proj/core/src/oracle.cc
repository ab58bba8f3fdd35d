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

#include "lrudesign/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "lrudesign/common.h"

namespace lrud {
namespace internal {

std::vector<std::uint64_t> PartitionDp(int n,
                                       std::span<const double> block_cost,
                                       double* total) {
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<double> best(full + 1, kInfinity);
  std::vector<std::uint64_t> choice(full + 1, 0);
  best[0] = 0.0;
  for (std::uint64_t u = 1; u <= full; ++u) {
    const std::uint64_t low = u & -u;
    const std::uint64_t rest = u & ~low;
    // First pass: optimal value; second pass: canonically smallest block
    // among the optimal ones.
    double value = kInfinity;
    for (std::uint64_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint64_t block = sub | low;
      const double c = block_cost[block] + best[u & ~block];
      value = std::min(value, c);
      if (sub == 0) break;
    }
    if (value == kInfinity) continue;
    const double tol = 1e-12 * (1.0 + std::abs(value));
    std::uint64_t pick = 0;
    for (std::uint64_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint64_t block = sub | low;
      const double c = block_cost[block] + best[u & ~block];
      if (c <= value + tol && (pick == 0 || MaskCanonicalLess(block, pick))) {
        pick = block;
      }
      if (sub == 0) break;
    }
    best[u] = value;
    choice[u] = pick;
  }
  std::vector<std::uint64_t> blocks;
  *total = best[full];
  if (best[full] == kInfinity) return blocks;
  for (std::uint64_t u = full; u != 0; u &= ~choice[u]) {
    blocks.push_back(choice[u]);
  }
  return blocks;
}

}  // namespace internal

bool PartitionCanonicalLess(std::span<const VertexSet> a,
                            std::span<const VertexSet> b) {
  std::vector<VertexSet> sa(a.begin(), a.end());
  std::vector<VertexSet> sb(b.begin(), b.end());
  SortCanonical(sa);
  SortCanonical(sb);
  return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(),
                                      sb.end(), CanonicalLess);
}

LruDesign OracleOptimalDesign(const SystemInstance& inst,
                              const SuccessorSets& h, int cap) {
  const int n = inst.num_vertices();
  if (n > cap || n > 30) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "design oracle supports at most " + std::to_string(cap) +
                    " vertices");
  }
  const MaskCost mc(inst, h);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<double> cost(full + 1, kInfinity);
  for (std::uint64_t q = 1; q <= full; ++q) {
    if (mc.Connected(q)) cost[q] = mc.Omega(q);
  }
  double total = 0.0;
  const std::vector<std::uint64_t> blocks =
      internal::PartitionDp(n, cost, &total);
  std::vector<VertexSet> sets;
  for (std::uint64_t b : blocks) sets.push_back(FromMask(n, b));
  return DesignCost(inst, h, sets);
}

PricingResult OraclePrice(const SystemInstance& inst, const SuccessorSets& h,
                          std::span<const double> duals, int cap) {
  const int n = inst.num_vertices();
  if (n > cap || n > 30) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "pricing oracle supports at most " + std::to_string(cap) +
                    " vertices");
  }
  if (static_cast<int>(duals.size()) != n) {
    throw Error(ErrorCode::kInvalidArgument, "one dual per vertex expected");
  }
  const MaskCost mc(inst, h);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::uint64_t best_mask = 0;
  double best = kInfinity;
  for (std::uint64_t q = 1; q <= full; ++q) {
    double rc = mc.Omega(q);
    for (std::uint64_t b = q; b != 0; b &= b - 1) rc -= duals[std::countr_zero(b)];
    const double tol = 1e-12 * (1.0 + std::abs(best));
    if (best_mask == 0 || rc < best - tol ||
        (rc <= best + tol && MaskCanonicalLess(q, best_mask))) {
      best = rc;
      best_mask = q;
    }
  }
  PricingResult out;
  out.column = FromMask(n, best_mask);
  out.reduced_cost = best;
  out.method = PricingMethod::kExhaustive;
  return out;
}

}  // namespace lrud
