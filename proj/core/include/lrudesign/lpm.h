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

#ifndef LRUDESIGN_LPM_H_
#define LRUDESIGN_LPM_H_

#include <vector>

#include "lrudesign/graph.h"

namespace lrud {

// A point of the set-partitioning relaxation: weights on LRU columns.
struct FractionalSolution {
  std::vector<VertexSet> columns;
  std::vector<double> values;
  std::vector<double> duals;  // per vertex; empty when unknown
  double objective = 0.0;
};

// Sum of omega(Q) * x_Q.
double LpmObjective(const SystemInstance& inst, const SuccessorSets& h,
                    const FractionalSolution& x);

// Largest |sum of x_Q over columns containing v - 1| over all vertices.
double MaxCoverageDeviation(const FractionalSolution& x, int num_vertices);

// Columns with x_Q > tol, in pool order.
std::vector<VertexSet> Support(const FractionalSolution& x,
                               double tol = 1e-9);

bool IsIntegral(const FractionalSolution& x, double tol = 1e-6);

}  // namespace lrud

#endif  // LRUDESIGN_LPM_H_
