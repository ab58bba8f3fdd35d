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

#include "lrudesign/cost_model.h"

#include <algorithm>
#include <bit>
#include <string>

namespace lrud {
namespace {

constexpr int kMaxEdgeWords = 32;

}  // namespace

Lru LruCost(const SystemInstance& inst, const SuccessorSets& h,
            const VertexSet& q) {
  if (q.none()) throw Error(ErrorCode::kEmptyLru, "LRU without members");
  Lru lru;
  lru.members = q;
  lru.gamma = RemovalSet(inst, h, q);
  for (int v : Members(q)) {
    lru.rate += inst.vertex(v).rate;
    lru.purchase += inst.vertex(v).cost;
  }
  lru.removal = EdgeWeight(inst, lru.gamma);
  lru.omega = lru.rate * (lru.removal + lru.purchase);
  return lru;
}

LruDesign DesignCost(const SystemInstance& inst, const SuccessorSets& h,
                     std::span<const VertexSet> design) {
  VertexSet covered = inst.EmptyVertexSet();
  for (const VertexSet& q : design) {
    if (q.size() != covered.size()) {
      throw Error(ErrorCode::kNotAPartition, "set of wrong universe size");
    }
    if (q.none()) throw Error(ErrorCode::kNotAPartition, "empty block");
    if (q.intersects(covered)) {
      const int v = static_cast<int>((q & covered).find_first());
      throw Error(ErrorCode::kNotAPartition,
                  "vertex '" + inst.vertex(v).label + "' in two blocks");
    }
    covered |= q;
  }
  if (!covered.all()) {
    const int v = static_cast<int>((~covered).find_first());
    throw Error(ErrorCode::kNotAPartition,
                "vertex '" + inst.vertex(v).label + "' uncovered");
  }
  LruDesign out;
  std::vector<VertexSet> sets(design.begin(), design.end());
  SortCanonical(sets);
  for (const VertexSet& q : sets) {
    out.lrus.push_back(LruCost(inst, h, q));
    out.total += out.lrus.back().omega;
  }
  return out;
}

bool IsConnectedDesign(const SystemInstance& inst,
                       std::span<const VertexSet> design) {
  return std::all_of(design.begin(), design.end(), [&](const VertexSet& q) {
    return InducesConnected(inst, q);
  });
}

std::vector<VertexSet> DesignSets(const LruDesign& design) {
  std::vector<VertexSet> out;
  for (const Lru& lru : design.lrus) out.push_back(lru.members);
  return out;
}

MaskCost::MaskCost(const SystemInstance& inst, const SuccessorSets& h)
    : n_(inst.num_vertices()), m_(inst.num_edges()) {
  if (n_ > kMaxVertices) {
    throw Error(ErrorCode::kInstanceTooLarge,
                std::to_string(n_) + " vertices exceed bitmask capacity");
  }
  words_ = (m_ + 63) / 64;
  if (words_ > kMaxEdgeWords) {
    throw Error(ErrorCode::kInstanceTooLarge, "too many edges");
  }
  eu_.resize(m_);
  ev_.resize(m_);
  weight_.resize(m_);
  h_.assign(static_cast<size_t>(m_) * words_, 0);
  adjacency_.assign(n_, 0);
  for (int e = 0; e < m_; ++e) {
    eu_[e] = inst.edge(e).u;
    ev_[e] = inst.edge(e).v;
    weight_[e] = inst.edge(e).weight;
    adjacency_[eu_[e]] |= std::uint64_t{1} << ev_[e];
    adjacency_[ev_[e]] |= std::uint64_t{1} << eu_[e];
    const EdgeSet& he = h[e];
    for (auto z = he.find_first(); z != EdgeSet::npos; z = he.find_next(z)) {
      h_[static_cast<size_t>(e) * words_ + z / 64] |= std::uint64_t{1}
                                                      << (z % 64);
    }
  }
  for (int v = 0; v < n_; ++v) {
    rate_.push_back(inst.vertex(v).rate);
    cost_.push_back(inst.vertex(v).cost);
  }
}

double MaskCost::Rate(std::uint64_t q) const {
  double sum = 0.0;
  for (; q != 0; q &= q - 1) sum += rate_[std::countr_zero(q)];
  return sum;
}

double MaskCost::Purchase(std::uint64_t q) const {
  double sum = 0.0;
  for (; q != 0; q &= q - 1) sum += cost_[std::countr_zero(q)];
  return sum;
}

double MaskCost::FixedRemovalWeight(std::uint64_t q,
                                    std::uint64_t outside) const {
  std::uint64_t acc[kMaxEdgeWords] = {};
  bool any = false;
  for (int e = 0; e < m_; ++e) {
    const std::uint64_t bu = std::uint64_t{1} << eu_[e];
    const std::uint64_t bv = std::uint64_t{1} << ev_[e];
    const bool crosses = ((q & bu) && (outside & bv)) ||
                         ((q & bv) && (outside & bu));
    if (!crosses) continue;
    any = true;
    const std::uint64_t* he = &h_[static_cast<size_t>(e) * words_];
    for (int w = 0; w < words_; ++w) acc[w] |= he[w];
  }
  if (!any) return 0.0;
  double sum = 0.0;
  for (int w = 0; w < words_; ++w) {
    for (std::uint64_t bits = acc[w]; bits != 0; bits &= bits - 1) {
      sum += weight_[w * 64 + std::countr_zero(bits)];
    }
  }
  return sum;
}

double MaskCost::RemovalWeight(std::uint64_t q) const {
  const std::uint64_t all =
      n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  return FixedRemovalWeight(q, all & ~q);
}

double MaskCost::Omega(std::uint64_t q) const {
  return Rate(q) * (RemovalWeight(q) + Purchase(q));
}

bool MaskCost::Connected(std::uint64_t q) const {
  if (q == 0) return false;
  std::uint64_t seen = q & -q;
  std::uint64_t frontier = seen;
  while (frontier != 0) {
    const int v = std::countr_zero(frontier);
    frontier &= frontier - 1;
    const std::uint64_t fresh = adjacency_[v] & q & ~seen;
    seen |= fresh;
    frontier |= fresh;
  }
  return seen == q;
}

}  // namespace lrud
