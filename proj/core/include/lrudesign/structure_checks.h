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

#ifndef LRUDESIGN_STRUCTURE_CHECKS_H_
#define LRUDESIGN_STRUCTURE_CHECKS_H_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "lrudesign/graph.h"
#include "lrudesign/lpm.h"

namespace lrud {

// Q_1..Q_n, n >= 3, consecutive sets overlap and consecutive intersections
// differ in both directions (indices cyclic).
struct LruCycle {
  std::vector<VertexSet> sets;
};

// Checks the cycle conditions, including connectivity of every set.
bool IsLruCycle(const SystemInstance& inst, std::span<const VertexSet> sets);

// Shortest LRU cycle among the connected sets of `support`. Q_1 is the
// member with the lowest support index. Exhaustive; meant for small supports.
std::optional<LruCycle> FindLruCycle(const SystemInstance& inst,
                                     std::span<const VertexSet> support);

// F(X, Y) = Gamma(X) \ Gamma(Y). Throws kEmptyLru for empty X or Y.
EdgeSet DifferenceSet(const SystemInstance& inst, const SuccessorSets& h,
                      const VertexSet& x, const VertexSet& y);

// The four removal-path inclusions around Q_i of a cycle:
//  [0] Gamma(Qi&Qn) \ F(Qi&Qn, Qi) <= Gamma(Qi) \ F(Qi&Qp, Qp)
//  [1] Gamma(Qi-Qn) \ F(Qi&Qn, Qi) <= Gamma(Qi) \ F(Qi&Qn, Qn)
//  [2] Gamma(Qi&Qp) \ F(Qi&Qp, Qi) <= Gamma(Qi) \ F(Qi&Qn, Qn)
//  [3] Gamma(Qi-Qp) \ F(Qi&Qp, Qi) <= Gamma(Qi) \ F(Qi&Qp, Qp)
// with Qn = Q_{i+1} and Qp = Q_{i-1}.
struct InclusionReport {
  bool precondition = false;  // the sets form an LRU cycle
  bool triple_intersection_empty = false;
  std::array<bool, 4> holds = {false, false, false, false};
  std::array<EdgeSet, 4> witnesses;  // left side minus right side
  bool AllHold() const { return holds[0] && holds[1] && holds[2] && holds[3]; }
};

InclusionReport VerifyRemovalPathInclusions(const SystemInstance& inst,
                                            const SuccessorSets& h,
                                            const LruCycle& cycle, int i);

struct SplitResult {
  FractionalSolution solution;
  int split_index = -1;        // position of the split set in the cycle
  bool split_by_next = true;   // split against Q_{i+1}, else Q_{i-1}
  std::vector<double> scores;  // W_j per cycle position
  double objective_before = 0.0;
  double objective_after = 0.0;
};

// Splits the cycle member with the smallest W_j (lowest position on ties)
// into its intersection with a neighbour and the remainder, moving its
// weight to both parts. Throws kNotInSupport if a cycle set has no
// positive weight in x.
SplitResult CycleSplitImprove(const SystemInstance& inst,
                              const SuccessorSets& h,
                              const FractionalSolution& x,
                              const LruCycle& cycle);

// Rows are vertices 0..num_rows-1; column j has ones at columns[j].
struct BalanceWitness {
  std::vector<int> rows;
  std::vector<int> cols;
};

// A square submatrix of size >= 3 with all line sums 2 and distinct columns,
// found as a chordless cycle of length >= 6 in the row-column graph.
std::optional<BalanceWitness> FindUnbalancedSubmatrix(
    int num_rows, std::span<const VertexSet> columns);

bool IsTotallyBalanced(int num_rows, std::span<const VertexSet> columns);

// Structural facts about a relaxation point, evaluated on its support.
struct Certificate {
  bool cycle_free = false;
  bool totally_balanced = false;
  bool connected = false;
  bool integral = false;
};

Certificate Certify(const SystemInstance& inst, const FractionalSolution& x,
                    double integrality_tol = 1e-6);

}  // namespace lrud

#endif  // LRUDESIGN_STRUCTURE_CHECKS_H_
