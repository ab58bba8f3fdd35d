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

#include "lrudesign/clru.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "lrudesign/common.h"
#include "lrudesign/cost_model.h"
#include "lrudesign/oracle.h"

namespace lrud {

CoverLru CoverLruCost(const SystemInstance& inst, const SuccessorSets& h,
                      const VertexSet& replacement, const VertexSet& failure) {
  if (failure.none() || !failure.is_subset_of(replacement)) {
    throw Error(ErrorCode::kFailureOutsideReplacement,
                "failure set must be a nonempty subset of the replacement set");
  }
  CoverLru out;
  out.replacement = replacement;
  out.failure = failure;
  const Lru r = LruCost(inst, h, replacement);
  double rate = 0.0;
  for (auto v = failure.find_first(); v != VertexSet::npos;
       v = failure.find_next(v)) {
    rate += inst.vertex(v).rate;
  }
  out.omega = rate * (r.removal + r.purchase);
  return out;
}

CoverDesign ClruCost(const SystemInstance& inst, const SuccessorSets& h,
                     std::span<const CoverSpec> design) {
  const int n = inst.num_vertices();
  VertexSet covered(n);
  CoverDesign out;
  for (const CoverSpec& spec : design) {
    if (static_cast<int>(spec.failure.size()) != n ||
        static_cast<int>(spec.replacement.size()) != n) {
      throw Error(ErrorCode::kInvalidArgument, "set size mismatch");
    }
    if ((covered & spec.failure).any()) {
      throw Error(ErrorCode::kFailureSetsNotPartition,
                  "failure sets overlap");
    }
    covered |= spec.failure;
    out.lrus.push_back(
        CoverLruCost(inst, h, spec.replacement, spec.failure));
  }
  if (static_cast<int>(covered.count()) != n) {
    throw Error(ErrorCode::kFailureSetsNotPartition,
                "failure sets do not cover every vertex");
  }
  std::sort(out.lrus.begin(), out.lrus.end(),
            [](const CoverLru& a, const CoverLru& b) {
              return CanonicalLess(a.failure, b.failure);
            });
  for (const CoverLru& lru : out.lrus) out.total += lru.omega;
  return out;
}

std::string_view ClruModeName(ClruMode mode) {
  switch (mode) {
    case ClruMode::kConnected: return "connected";
    case ClruMode::kFullPower: return "full";
    case ClruMode::kMilp: return "milp";
  }
  return "unknown";
}

ClruEncoding::ClruEncoding(const SystemInstance& inst, const SuccessorSets& h)
    : n_(inst.num_vertices()), m_(inst.num_edges()) {
  LpModel& lp = model_.lp;
  for (int c = 0; c < 2 * n_ * n_; ++c) {
    model_.AddBinary(0.0);
    model_.priority.push_back(c < n_ * n_ ? 2 : 1);
  }
  for (int c = 0; c < m_ * n_; ++c) {
    model_.AddBinary(0.0);
    model_.priority.push_back(0);
  }
  for (int e = 0; e < m_; ++e) {
    for (int v = 0; v < n_; ++v) {
      const double c = inst.vertex(v).rate * inst.edge(e).weight;
      for (int i = 0; i < n_; ++i) model_.AddContinuous(0.0, kInfinity, c);
    }
  }
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      const double c = inst.vertex(u).cost * inst.vertex(v).rate;
      for (int i = 0; i < n_; ++i) model_.AddContinuous(0.0, kInfinity, c);
    }
  }
  for (int v = 0; v < n_; ++v) {
    std::vector<LinearTerm> terms;
    for (int i = 0; i < n_; ++i) terms.push_back({f(v, i), 1.0});
    lp.AddRow(terms, RowSense::kEqual, 1.0);
    for (int i = 0; i < n_; ++i) {
      lp.AddRow({{f(v, i), 1.0}, {r(v, i), -1.0}}, RowSense::kLessEqual, 0.0);
    }
  }
  for (int b = 0; b < m_; ++b) {
    const int u = inst.edge(b).u;
    const int v = inst.edge(b).v;
    const EdgeSet& hb = h[b];
    for (auto e = hb.find_first(); e != EdgeSet::npos; e = hb.find_next(e)) {
      for (int i = 0; i < n_; ++i) {
        const int ke = k(static_cast<int>(e), i);
        lp.AddRow({{r(u, i), 1.0}, {r(v, i), -1.0}, {ke, -1.0}},
                  RowSense::kLessEqual, 0.0);
        lp.AddRow({{r(v, i), 1.0}, {r(u, i), -1.0}, {ke, -1.0}},
                  RowSense::kLessEqual, 0.0);
      }
    }
  }
  for (int e = 0; e < m_; ++e) {
    for (int v = 0; v < n_; ++v) {
      for (int i = 0; i < n_; ++i) {
        const int z = rho(e, v, i);
        lp.AddRow({{z, 1.0}, {k(e, i), -1.0}}, RowSense::kLessEqual, 0.0);
        lp.AddRow({{z, 1.0}, {f(v, i), -1.0}}, RowSense::kLessEqual, 0.0);
        lp.AddRow({{z, 1.0}, {k(e, i), -1.0}, {f(v, i), -1.0}},
                  RowSense::kGreaterEqual, -1.0);
      }
    }
  }
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      for (int i = 0; i < n_; ++i) {
        const int z = sigma(u, v, i);
        lp.AddRow({{z, 1.0}, {r(u, i), -1.0}}, RowSense::kLessEqual, 0.0);
        lp.AddRow({{z, 1.0}, {f(v, i), -1.0}}, RowSense::kLessEqual, 0.0);
        lp.AddRow({{z, 1.0}, {r(u, i), -1.0}, {f(v, i), -1.0}},
                  RowSense::kGreaterEqual, -1.0);
      }
    }
  }
  // Failure set of vertex j sits in a slot i <= j.
  for (int v = 0; v + 1 < n_; ++v) {
    std::vector<LinearTerm> terms;
    for (int i = v + 1; i < n_; ++i) terms.push_back({f(v, i), 1.0});
    lp.AddRow(terms, RowSense::kLessEqual, 0.0);
  }
}

std::vector<CoverSpec> ClruEncoding::Decode(std::span<const double> x) const {
  std::vector<CoverSpec> out;
  for (int i = 0; i < n_; ++i) {
    CoverSpec spec{VertexSet(n_), VertexSet(n_)};
    for (int v = 0; v < n_; ++v) {
      if (x[f(v, i)] > 0.5) spec.failure.set(v);
      if (x[r(v, i)] > 0.5) spec.replacement.set(v);
    }
    if (spec.failure.any()) out.push_back(std::move(spec));
  }
  return out;
}

namespace {

CoverDesign SolveExhaustive(const SystemInstance& inst, const SuccessorSets& h,
                            bool connected) {
  const int n = inst.num_vertices();
  const MaskCost mc(inst, h);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  // Cheapest allowed replacement set containing each mask.
  std::vector<double> best(full + 1, kInfinity);
  std::vector<std::uint64_t> arg(full + 1, 0);
  for (std::uint64_t q = 1; q <= full; ++q) {
    if (connected && !mc.Connected(q)) continue;
    best[q] = mc.RemovalWeight(q) + mc.Purchase(q);
    arg[q] = q;
  }
  for (int b = 0; b < n; ++b) {
    const std::uint64_t bit = std::uint64_t{1} << b;
    for (std::uint64_t q = 1; q <= full; ++q) {
      if ((q & bit) != 0) continue;
      if (best[q | bit] < best[q]) {
        best[q] = best[q | bit];
        arg[q] = arg[q | bit];
      }
    }
  }
  std::vector<double> block(full + 1, kInfinity);
  for (std::uint64_t q = 1; q <= full; ++q) {
    if (connected && !mc.Connected(q)) continue;
    if (best[q] < kInfinity) block[q] = mc.Rate(q) * best[q];
  }
  double total = 0.0;
  const std::vector<std::uint64_t> failures =
      internal::PartitionDp(n, block, &total);
  std::vector<CoverSpec> specs;
  for (std::uint64_t fset : failures) {
    specs.push_back({FromMask(n, arg[fset]), FromMask(n, fset)});
  }
  return ClruCost(inst, h, specs);
}

}  // namespace

CoverDesign SolveClru(const SystemInstance& inst, const SuccessorSets& h,
                      const ClruOptions& options) {
  const int n = inst.num_vertices();
  if (options.mode == ClruMode::kMilp) {
    const ClruEncoding enc(inst, h);
    const MilpSolution sol = SolveMilp(enc.model(), options.milp);
    if (!sol.has_incumbent) {
      throw Error(ErrorCode::kNumericalFailure,
                  std::string("cover MILP: ") +
                      std::string(MilpStatusName(sol.status)));
    }
    const std::vector<CoverSpec> specs = enc.Decode(sol.x);
    return ClruCost(inst, h, specs);
  }
  const bool connected = options.mode == ClruMode::kConnected;
  const int cap = options.cap > 0 ? options.cap : (connected ? 8 : 6);
  if (n > cap || n > 24) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "cover solver supports at most " + std::to_string(cap) +
                    " vertices in this mode");
  }
  return SolveExhaustive(inst, h, connected);
}

}  // namespace lrud
