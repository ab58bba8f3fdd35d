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

#include "lrudesign/lpm.h"

#include <algorithm>
#include <cmath>

#include "lrudesign/cost_model.h"

namespace lrud {

double LpmObjective(const SystemInstance& inst, const SuccessorSets& h,
                    const FractionalSolution& x) {
  double sum = 0.0;
  for (size_t i = 0; i < x.columns.size(); ++i) {
    if (x.values[i] == 0.0) continue;
    sum += LruCost(inst, h, x.columns[i]).omega * x.values[i];
  }
  return sum;
}

double MaxCoverageDeviation(const FractionalSolution& x, int num_vertices) {
  std::vector<double> cover(num_vertices, 0.0);
  for (size_t i = 0; i < x.columns.size(); ++i) {
    const VertexSet& q = x.columns[i];
    for (auto v = q.find_first(); v != VertexSet::npos; v = q.find_next(v)) {
      cover[v] += x.values[i];
    }
  }
  double worst = 0.0;
  for (double c : cover) worst = std::max(worst, std::abs(c - 1.0));
  return worst;
}

std::vector<VertexSet> Support(const FractionalSolution& x, double tol) {
  std::vector<VertexSet> out;
  for (size_t i = 0; i < x.columns.size(); ++i) {
    if (x.values[i] > tol) out.push_back(x.columns[i]);
  }
  return out;
}

bool IsIntegral(const FractionalSolution& x, double tol) {
  return std::all_of(x.values.begin(), x.values.end(), [tol](double v) {
    return std::abs(v - std::round(v)) <= tol;
  });
}

}  // namespace lrud
