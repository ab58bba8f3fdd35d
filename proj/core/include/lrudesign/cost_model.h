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

#ifndef LRUDESIGN_COST_MODEL_H_
#define LRUDESIGN_COST_MODEL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "lrudesign/graph.h"

namespace lrud {

struct Lru {
  VertexSet members;
  EdgeSet gamma;
  double rate = 0.0;      // lambda(Q), additive
  double purchase = 0.0;  // sum of l(u) over Q
  double removal = 0.0;   // sum of w(e) over Gamma(Q)
  double omega = 0.0;     // rate * (removal + purchase)
};

struct LruDesign {
  std::vector<Lru> lrus;  // canonical order
  double total = 0.0;
};

Lru LruCost(const SystemInstance& inst, const SuccessorSets& h,
            const VertexSet& q);

// Throws kNotAPartition on overlap, uncovered vertex, or empty block.
LruDesign DesignCost(const SystemInstance& inst, const SuccessorSets& h,
                     std::span<const VertexSet> design);

bool IsConnectedDesign(const SystemInstance& inst,
                       std::span<const VertexSet> design);

std::vector<VertexSet> DesignSets(const LruDesign& design);

// Bitmask cost evaluation for instances with at most 64 vertices. Used by the
// enumeration-based solvers.
class MaskCost {
 public:
  static constexpr int kMaxVertices = 64;

  MaskCost(const SystemInstance& inst, const SuccessorSets& h);

  int num_vertices() const { return n_; }
  double Rate(std::uint64_t q) const;
  double Purchase(std::uint64_t q) const;
  double RemovalWeight(std::uint64_t q) const;
  double Omega(std::uint64_t q) const;
  std::uint64_t Neighbors(int v) const { return adjacency_[v]; }
  double rate(int v) const { return rate_[v]; }
  double cost(int v) const { return cost_[v]; }
  bool Connected(std::uint64_t q) const;

  // Weight of the union of H(e) over boundary edges of q that leave q
  // towards `outside`.
  double FixedRemovalWeight(std::uint64_t q, std::uint64_t outside) const;

 private:
  int n_ = 0;
  int m_ = 0;
  int words_ = 0;
  std::vector<int> eu_;
  std::vector<int> ev_;
  std::vector<double> weight_;
  std::vector<std::uint64_t> h_;  // m_ * words_
  std::vector<double> rate_;
  std::vector<double> cost_;
  std::vector<std::uint64_t> adjacency_;
};

}  // namespace lrud

#endif  // LRUDESIGN_COST_MODEL_H_
