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

#ifndef LRUDESIGN_INSTANCE_GEN_H_
#define LRUDESIGN_INSTANCE_GEN_H_

#include <cstdint>

#include <nlohmann/json.hpp>

#include "lrudesign/graph.h"

namespace lrud {

struct GeneratorConfig {
  int num_vertices = 10;
  double avg_degree = 2.0;      // |E| = round(avg_degree * |V|)
  double avg_out_degree = 1.0;  // |A| = round(avg_out_degree * |E|)
  double edge_scale = 1.0;      // multiplies every edge weight
  std::uint64_t seed = 1;
  double rate_min = 0.01, rate_max = 0.5;
  double cost_min = 10.0, cost_max = 300.0;
  double weight_min = 1.0, weight_max = 120.0;

  nlohmann::json ToJson() const;
};

// Random connected instance: a random spanning tree topped up with random
// extra edges, a random edge ranking I(e), and arcs between random adjacent
// edge pairs oriented from lower to higher rank (so the precedence graph is
// acyclic). Throws kInfeasibleConfig when the counts cannot be met.
SystemInstance Generate(const GeneratorConfig& config);

// Copy with every edge weight multiplied by q; throws kNonPositiveFactor.
SystemInstance ScaleEdgeWeights(const SystemInstance& inst, double q);

}  // namespace lrud

#endif  // LRUDESIGN_INSTANCE_GEN_H_
