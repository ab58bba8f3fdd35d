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

#include "lrudesign/structure_checks.h"

#include <algorithm>
#include <functional>
#include <utility>

#include "lrudesign/common.h"

namespace lrud {
namespace {

// Both set differences of consecutive intersections must be nonempty.
bool Staggered(const VertexSet& a, const VertexSet& b) {
  return a.is_subset_of(b) == false && b.is_subset_of(a) == false;
}

}  // namespace

bool IsLruCycle(const SystemInstance& inst, std::span<const VertexSet> sets) {
  const int n = static_cast<int>(sets.size());
  if (n < 3) return false;
  for (const VertexSet& q : sets) {
    if (q.none() || !InducesConnected(inst, q)) return false;
  }
  std::vector<VertexSet> inter;
  for (int i = 0; i < n; ++i) {
    inter.push_back(sets[i] & sets[(i + 1) % n]);
    if (inter.back().none()) return false;
  }
  for (int i = 0; i < n; ++i) {
    if (!Staggered(inter[i], inter[(i + 1) % n])) return false;
  }
  return true;
}

std::optional<LruCycle> FindLruCycle(const SystemInstance& inst,
                                     std::span<const VertexSet> support) {
  std::vector<VertexSet> sets;
  for (const VertexSet& q : support) {
    if (q.any() && InducesConnected(inst, q)) sets.push_back(q);
  }
  const int total = static_cast<int>(sets.size());
  std::vector<int> seq;
  std::vector<VertexSet> inter;  // inter[t] = Q_t & Q_{t+1}
  std::vector<char> used(total, 0);

  std::function<bool(int)> extend = [&](int length) -> bool {
    const int t = static_cast<int>(seq.size());
    if (t == length) {
      VertexSet closing = sets[seq[t - 1]] & sets[seq[0]];
      if (closing.none()) return false;
      return Staggered(inter[t - 2], closing) && Staggered(closing, inter[0]);
    }
    for (int c = seq[0] + 1; c < total; ++c) {
      if (used[c]) continue;
      VertexSet cut = sets[seq[t - 1]] & sets[c];
      if (cut.none()) continue;
      if (t >= 2 && !Staggered(inter[t - 2], cut)) continue;
      used[c] = 1;
      seq.push_back(c);
      inter.push_back(std::move(cut));
      if (extend(length)) return true;
      inter.pop_back();
      seq.pop_back();
      used[c] = 0;
    }
    return false;
  };

  for (int length = 3; length <= total; ++length) {
    for (int s = 0; s + length <= total; ++s) {
      seq.assign(1, s);
      inter.clear();
      std::fill(used.begin(), used.end(), 0);
      used[s] = 1;
      if (extend(length)) {
        LruCycle cycle;
        for (int c : seq) cycle.sets.push_back(sets[c]);
        return cycle;
      }
    }
  }
  return std::nullopt;
}

EdgeSet DifferenceSet(const SystemInstance& inst, const SuccessorSets& h,
                      const VertexSet& x, const VertexSet& y) {
  if (x.none() || y.none()) {
    throw Error(ErrorCode::kEmptyLru, "difference set of an empty LRU");
  }
  return RemovalSet(inst, h, x) - RemovalSet(inst, h, y);
}

InclusionReport VerifyRemovalPathInclusions(const SystemInstance& inst,
                                            const SuccessorSets& h,
                                            const LruCycle& cycle, int i) {
  InclusionReport report;
  const int n = static_cast<int>(cycle.sets.size());
  report.precondition = IsLruCycle(inst, cycle.sets) && i >= 0 && i < n;
  if (!report.precondition) return report;
  const VertexSet& qi = cycle.sets[i];
  const VertexSet& qn = cycle.sets[(i + 1) % n];
  const VertexSet& qp = cycle.sets[(i + n - 1) % n];
  report.triple_intersection_empty = (qi & qn & qp).none();

  const VertexSet in_next = qi & qn;
  const VertexSet in_prev = qi & qp;
  const EdgeSet gamma_i = RemovalSet(inst, h, qi);
  const EdgeSet f_next_i = DifferenceSet(inst, h, in_next, qi);
  const EdgeSet f_prev_i = DifferenceSet(inst, h, in_prev, qi);
  const EdgeSet f_next_n = DifferenceSet(inst, h, in_next, qn);
  const EdgeSet f_prev_p = DifferenceSet(inst, h, in_prev, qp);

  const std::array<EdgeSet, 4> lhs = {
      RemovalSet(inst, h, in_next) - f_next_i,
      RemovalSet(inst, h, qi - qn) - f_next_i,
      RemovalSet(inst, h, in_prev) - f_prev_i,
      RemovalSet(inst, h, qi - qp) - f_prev_i,
  };
  const std::array<EdgeSet, 4> rhs = {
      gamma_i - f_prev_p,
      gamma_i - f_next_n,
      gamma_i - f_next_n,
      gamma_i - f_prev_p,
  };
  for (int c = 0; c < 4; ++c) {
    report.witnesses[c] = lhs[c] - rhs[c];
    report.holds[c] = report.witnesses[c].none();
  }
  return report;
}

SplitResult CycleSplitImprove(const SystemInstance& inst,
                              const SuccessorSets& h,
                              const FractionalSolution& x,
                              const LruCycle& cycle) {
  const int n = static_cast<int>(cycle.sets.size());
  std::vector<int> where(n, -1);
  for (int j = 0; j < n; ++j) {
    for (size_t c = 0; c < x.columns.size(); ++c) {
      if (x.values[c] > 0.0 && x.columns[c] == cycle.sets[j]) {
        where[j] = static_cast<int>(c);
        break;
      }
    }
    if (where[j] < 0) {
      throw Error(ErrorCode::kNotInSupport,
                  "cycle set is not in the support of the solution");
    }
  }

  SplitResult out;
  std::vector<double> by_next(n), by_prev(n);
  for (int j = 0; j < n; ++j) {
    const VertexSet& qj = cycle.sets[j];
    const VertexSet& qn = cycle.sets[(j + 1) % n];
    const VertexSet& qp = cycle.sets[(j + n - 1) % n];
    by_next[j] = EdgeWeight(inst, DifferenceSet(inst, h, qj & qn, qj));
    by_prev[j] = EdgeWeight(inst, DifferenceSet(inst, h, qj & qp, qj));
    out.scores.push_back(std::min(by_next[j], by_prev[j]));
  }
  int i = 0;
  for (int j = 1; j < n; ++j) {
    if (out.scores[j] < out.scores[i]) i = j;
  }
  out.split_index = i;
  out.split_by_next = by_next[i] <= by_prev[i];
  const VertexSet& qi = cycle.sets[i];
  const VertexSet& other =
      cycle.sets[out.split_by_next ? (i + 1) % n : (i + n - 1) % n];

  const double weight = x.values[where[i]];
  FractionalSolution next;
  for (size_t c = 0; c < x.columns.size(); ++c) {
    if (static_cast<int>(c) == where[i]) continue;
    next.columns.push_back(x.columns[c]);
    next.values.push_back(x.values[c]);
  }
  for (const VertexSet& part : {VertexSet(qi & other), VertexSet(qi - other)}) {
    auto it = std::find(next.columns.begin(), next.columns.end(), part);
    if (it == next.columns.end()) {
      next.columns.push_back(part);
      next.values.push_back(weight);
    } else {
      next.values[it - next.columns.begin()] += weight;
    }
  }
  out.objective_before = LpmObjective(inst, h, x);
  next.objective = LpmObjective(inst, h, next);
  out.objective_after = next.objective;
  out.solution = std::move(next);
  return out;
}

std::optional<BalanceWitness> FindUnbalancedSubmatrix(
    int num_rows, std::span<const VertexSet> columns) {
  const int r = num_rows;
  const int total = r + static_cast<int>(columns.size());
  std::vector<std::vector<int>> adj(total);
  std::vector<std::vector<char>> linked(total, std::vector<char>(total, 0));
  for (int c = 0; c < static_cast<int>(columns.size()); ++c) {
    const VertexSet& col = columns[c];
    for (auto v = col.find_first(); v != VertexSet::npos;
         v = col.find_next(v)) {
      const int row = static_cast<int>(v);
      adj[row].push_back(r + c);
      adj[r + c].push_back(row);
      linked[row][r + c] = linked[r + c][row] = 1;
    }
  }

  std::vector<int> path;
  std::vector<char> on_path(total, 0);
  // Grows a chordless path from path[0]; closes when the new vertex sees
  // path[0] and the cycle has at least six vertices.
  std::function<bool()> grow = [&]() -> bool {
    const int start = path.front();
    const int last = path.back();
    const int len = static_cast<int>(path.size());
    for (int v : adj[last]) {
      if (v <= start || on_path[v]) continue;
      bool chord = false;
      for (int p = 1; p + 1 < len && !chord; ++p) chord = linked[v][path[p]];
      if (chord) continue;
      if (len >= 2 && linked[v][start]) {
        if (len + 1 >= 6) {
          path.push_back(v);
          return true;
        }
        continue;
      }
      path.push_back(v);
      on_path[v] = 1;
      if (grow()) return true;
      on_path[v] = 0;
      path.pop_back();
    }
    return false;
  };

  for (int s = 0; s < total; ++s) {
    path.assign(1, s);
    std::fill(on_path.begin(), on_path.end(), 0);
    on_path[s] = 1;
    if (grow()) {
      BalanceWitness w;
      for (int v : path) {
        if (v < r) {
          w.rows.push_back(v);
        } else {
          w.cols.push_back(v - r);
        }
      }
      std::sort(w.rows.begin(), w.rows.end());
      std::sort(w.cols.begin(), w.cols.end());
      return w;
    }
  }
  return std::nullopt;
}

bool IsTotallyBalanced(int num_rows, std::span<const VertexSet> columns) {
  return !FindUnbalancedSubmatrix(num_rows, columns).has_value();
}

Certificate Certify(const SystemInstance& inst, const FractionalSolution& x,
                    double integrality_tol) {
  const std::vector<VertexSet> support = Support(x, integrality_tol);
  Certificate c;
  c.cycle_free = !FindLruCycle(inst, support).has_value();
  c.totally_balanced = IsTotallyBalanced(inst.num_vertices(), support);
  c.connected = std::all_of(support.begin(), support.end(),
                            [&](const VertexSet& q) {
                              return InducesConnected(inst, q);
                            });
  c.integral = IsIntegral(x, integrality_tol) &&
               MaxCoverageDeviation(x, inst.num_vertices()) <= integrality_tol;
  return c;
}

}  // namespace lrud
