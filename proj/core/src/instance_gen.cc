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

#include "lrudesign/instance_gen.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lrudesign/random.h"

namespace lrud {

nlohmann::json GeneratorConfig::ToJson() const {
  return {{"n", num_vertices},
          {"delta", avg_degree},
          {"delta_e", avg_out_degree},
          {"q", edge_scale},
          {"seed", seed},
          {"rate_range", {rate_min, rate_max}},
          {"cost_range", {cost_min, cost_max}},
          {"weight_range", {weight_min, weight_max}}};
}

SystemInstance Generate(const GeneratorConfig& config) {
  const int n = config.num_vertices;
  if (n < 1) throw Error(ErrorCode::kInfeasibleConfig, "need a vertex");
  if (!(config.avg_degree >= 0) || !(config.avg_out_degree >= 0)) {
    throw Error(ErrorCode::kInfeasibleConfig, "negative density");
  }
  if (!(config.edge_scale > 0) || !std::isfinite(config.edge_scale)) {
    throw Error(ErrorCode::kNonPositiveFactor, "edge scale");
  }
  const long long m = std::llround(config.avg_degree * n);
  const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
  if (m < n - 1) {
    throw Error(ErrorCode::kInfeasibleConfig,
                "|E| = " + std::to_string(m) + " cannot connect " +
                    std::to_string(n) + " vertices");
  }
  if (m > max_edges) {
    throw Error(ErrorCode::kInfeasibleConfig,
                "|E| = " + std::to_string(m) + " exceeds simple graph size");
  }

  Rng rng(config.seed);

  // Spanning tree over a random vertex order.
  std::vector<int> order(n);
  for (int v = 0; v < n; ++v) order[v] = v;
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[rng.Below(static_cast<std::uint64_t>(i) + 1)]);
  }
  std::set<std::pair<int, int>> edge_set;
  for (int i = 1; i < n; ++i) {
    const int parent = order[rng.Below(static_cast<std::uint64_t>(i))];
    edge_set.insert(std::minmax(order[i], parent));
  }

  // Extra edges drawn uniformly from the missing pairs.
  std::vector<std::pair<int, int>> missing;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!edge_set.count({u, v})) missing.emplace_back(u, v);
    }
  }
  const long long extra = m - (n - 1);
  for (long long i = 0; i < extra; ++i) {
    const std::uint64_t j =
        i + rng.Below(static_cast<std::uint64_t>(missing.size() - i));
    std::swap(missing[i], missing[j]);
    edge_set.insert(missing[i]);
  }
  std::vector<std::pair<int, int>> edges(edge_set.begin(), edge_set.end());

  // Random rank I(e).
  std::vector<int> rank(edges.size());
  for (size_t e = 0; e < rank.size(); ++e) rank[e] = static_cast<int>(e);
  for (size_t i = rank.size(); i > 1; --i) {
    std::swap(rank[i - 1], rank[rng.Below(i)]);
  }

  // All unordered adjacent edge pairs.
  std::vector<std::vector<int>> incident(n);
  for (size_t e = 0; e < edges.size(); ++e) {
    incident[edges[e].first].push_back(static_cast<int>(e));
    incident[edges[e].second].push_back(static_cast<int>(e));
  }
  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v < n; ++v) {
    for (size_t i = 0; i < incident[v].size(); ++i) {
      for (size_t j = i + 1; j < incident[v].size(); ++j) {
        pairs.emplace_back(incident[v][i], incident[v][j]);
      }
    }
  }
  const long long num_arcs = std::llround(config.avg_out_degree * m);
  if (num_arcs > static_cast<long long>(pairs.size())) {
    throw Error(ErrorCode::kInfeasibleConfig,
                std::to_string(num_arcs) + " arcs requested but only " +
                    std::to_string(pairs.size()) + " adjacent edge pairs");
  }
  std::set<std::pair<int, int>> chosen;
  std::vector<Arc> arcs;
  long long rejections = 0;
  while (static_cast<long long>(arcs.size()) < num_arcs) {
    const auto& [e, f] = pairs[rng.Below(pairs.size())];
    if (!chosen.insert({e, f}).second) {
      if (++rejections > 10 * num_arcs) {
        throw Error(ErrorCode::kInfeasibleConfig,
                    "too many duplicate arc draws");
      }
      continue;
    }
    rejections = 0;
    arcs.push_back(rank[e] <= rank[f] ? Arc{e, f} : Arc{f, e});
  }

  RawInstance raw;
  for (int v = 0; v < n; ++v) {
    Vertex vx;
    vx.label = "v" + std::to_string(v + 1);
    vx.rate = rng.Uniform(config.rate_min, config.rate_max);
    vx.cost = rng.Uniform(config.cost_min, config.cost_max);
    raw.vertices.push_back(std::move(vx));
  }
  for (const auto& [u, v] : edges) {
    raw.edges.push_back(
        Edge{u, v,
             rng.Uniform(config.weight_min, config.weight_max) *
                 config.edge_scale});
  }
  raw.arcs = std::move(arcs);
  return SystemInstance::Validate(std::move(raw));
}

SystemInstance ScaleEdgeWeights(const SystemInstance& inst, double q) {
  if (!(q > 0) || !std::isfinite(q)) {
    throw Error(ErrorCode::kNonPositiveFactor, std::to_string(q));
  }
  RawInstance raw = inst.ToRaw();
  for (Edge& e : raw.edges) e.weight *= q;
  return SystemInstance::Validate(std::move(raw));
}

}  // namespace lrud
