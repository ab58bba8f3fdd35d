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

#include "lrudesign/blp.h"

#include <vector>

namespace lrud {

BlpEncoding::BlpEncoding(const SystemInstance& inst, const SuccessorSets& h,
                         BlpOptions options)
    : inst_(&inst),
      h_(&h),
      options_(options),
      n_(inst.num_vertices()),
      m_(inst.num_edges()) {
  LpModel& lp = model_.lp;
  for (int v = 0; v < n_; ++v) {
    for (int i = 0; i < n_; ++i) {
      model_.AddBinary(0.0);
      model_.priority.push_back(1);
    }
  }
  // Once y is integral the cheapest k follows, so k is branched on last.
  for (int e = 0; e < m_; ++e) {
    for (int i = 0; i < n_; ++i) {
      model_.AddBinary(0.0);
      model_.priority.push_back(0);
    }
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
    for (int i = 0; i < n_; ++i) terms.push_back({y(v, i), 1.0});
    lp.AddRow(terms, RowSense::kEqual, 1.0);
    ++partition_rows_;
  }
  // Both orientations of every connection.
  for (int b = 0; b < m_; ++b) {
    const int u = inst.edge(b).u;
    const int v = inst.edge(b).v;
    const EdgeSet& hb = h[b];
    for (auto e = hb.find_first(); e != EdgeSet::npos; e = hb.find_next(e)) {
      for (int i = 0; i < n_; ++i) {
        const int ke = k(static_cast<int>(e), i);
        lp.AddRow({{y(u, i), 1.0}, {y(v, i), -1.0}, {ke, -1.0}},
                  RowSense::kLessEqual, 0.0);
        lp.AddRow({{y(v, i), 1.0}, {y(u, i), -1.0}, {ke, -1.0}},
                  RowSense::kLessEqual, 0.0);
        precedence_rows_ += 2;
      }
    }
  }
  for (int e = 0; e < m_; ++e) {
    for (int v = 0; v < n_; ++v) {
      for (int i = 0; i < n_; ++i) {
        const int r = rho(e, v, i);
        lp.AddRow({{r, 1.0}, {y(v, i), -1.0}}, RowSense::kLessEqual, 0.0);
        lp.AddRow({{r, 1.0}, {k(e, i), -1.0}}, RowSense::kLessEqual, 0.0);
        lp.AddRow({{r, 1.0}, {y(v, i), -1.0}, {k(e, i), -1.0}},
                  RowSense::kGreaterEqual, -1.0);
        mccormick_rows_ += 3;
      }
    }
  }
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      for (int i = 0; i < n_; ++i) {
        const int s = sigma(u, v, i);
        lp.AddRow({{s, 1.0}, {y(u, i), -1.0}}, RowSense::kLessEqual, 0.0);
        lp.AddRow({{s, 1.0}, {y(v, i), -1.0}}, RowSense::kLessEqual, 0.0);
        lp.AddRow({{s, 1.0}, {y(u, i), -1.0}, {y(v, i), -1.0}},
                  RowSense::kGreaterEqual, -1.0);
        mccormick_rows_ += 3;
      }
    }
  }
  if (options_.symmetry_breaking) {
    for (int v = 0; v + 1 < n_; ++v) {
      std::vector<LinearTerm> terms;
      for (int i = v + 1; i < n_; ++i) terms.push_back({y(v, i), 1.0});
      lp.AddRow(terms, RowSense::kLessEqual, 0.0);
      ++symmetry_rows_;
    }
  }
}

std::vector<double> BlpEncoding::Encode(
    std::span<const VertexSet> partition) const {
  std::vector<VertexSet> blocks(partition.begin(), partition.end());
  SortCanonical(blocks);
  std::vector<double> x(model_.lp.num_vars(), 0.0);
  for (int i = 0; i < static_cast<int>(blocks.size()); ++i) {
    const VertexSet& q = blocks[i];
    const std::vector<int> members = Members(q);
    const EdgeSet gamma = RemovalSet(*inst_, *h_, q);
    for (int v : members) x[y(v, i)] = 1.0;
    for (auto e = gamma.find_first(); e != EdgeSet::npos;
         e = gamma.find_next(e)) {
      x[k(static_cast<int>(e), i)] = 1.0;
      for (int v : members) x[rho(static_cast<int>(e), v, i)] = 1.0;
    }
    for (int u : members) {
      for (int v : members) x[sigma(u, v, i)] = 1.0;
    }
  }
  return x;
}

std::vector<VertexSet> BlpEncoding::Decode(std::span<const double> x) const {
  std::vector<VertexSet> out;
  for (int i = 0; i < n_; ++i) {
    VertexSet q(n_);
    for (int v = 0; v < n_; ++v) {
      if (x[y(v, i)] > 0.5) q.set(v);
    }
    if (q.any()) out.push_back(std::move(q));
  }
  SortCanonical(out);
  return out;
}

BlpResult SolveBlp(const BlpEncoding& enc, const SystemInstance& inst,
                   const SuccessorSets& h, const BlpSolveOptions& options) {
  MilpOptions milp = options.milp;
  if (options.singleton_start && !milp.start) {
    std::vector<VertexSet> singletons;
    for (int v = 0; v < inst.num_vertices(); ++v) {
      singletons.push_back(MakeSet(inst.num_vertices(), {v}));
    }
    milp.start = enc.Encode(singletons);
  }
  const MilpSolution sol = SolveMilp(enc.model(), milp);
  BlpResult out;
  out.status = sol.status;
  out.bound = sol.bound;
  out.nodes = sol.nodes;
  out.seconds = sol.seconds;
  if (sol.has_incumbent) {
    out.objective = sol.objective;
    const std::vector<VertexSet> sets = enc.Decode(sol.x);
    out.design = DesignCost(inst, h, sets);
  }
  return out;
}

}  // namespace lrud
