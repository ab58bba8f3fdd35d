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

// Instance builders and brute-force references shared by the tests.

#ifndef LRUDESIGN_TESTS_TEST_UTIL_H_
#define LRUDESIGN_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lrudesign/common.h"
#include "lrudesign/cost_model.h"
#include "lrudesign/graph.h"
#include "lrudesign/instance_gen.h"
#include "lrudesign/random.h"

namespace lrud::testing {

struct EdgeSpec {
  std::string u, v;
  double w = 1.0;
};
struct ArcSpec {
  std::pair<std::string, std::string> from, to;
};

// Builds an instance from labels; vertex order follows `labels`.
inline SystemInstance Build(const std::vector<std::string>& labels,
                            const std::vector<double>& cost,
                            const std::vector<double>& rate,
                            const std::vector<EdgeSpec>& edges,
                            const std::vector<ArcSpec>& arcs = {}) {
  RawInstance raw;
  auto index = [&](const std::string& s) {
    for (size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == s) return static_cast<int>(i);
    }
    return -1;
  };
  for (size_t i = 0; i < labels.size(); ++i) {
    raw.vertices.push_back({labels[i], cost[i], rate[i]});
  }
  for (const EdgeSpec& e : edges) {
    raw.edges.push_back({index(e.u), index(e.v), e.w});
  }
  auto edge_index = [&](const std::pair<std::string, std::string>& p) {
    const int a = index(p.first), b = index(p.second);
    for (size_t i = 0; i < raw.edges.size(); ++i) {
      const Edge& e = raw.edges[i];
      if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) {
        return static_cast<int>(i);
      }
    }
    return -1;
  };
  for (const ArcSpec& a : arcs) {
    raw.arcs.push_back({edge_index(a.from), edge_index(a.to)});
  }
  return SystemInstance::Validate(std::move(raw));
}

// Parts 1 and 2 joined by one edge of weight 10; rates 0.1, costs 1.
inline SystemInstance TwoVertexPath() {
  return Build({"1", "2"}, {1, 1}, {0.1, 0.1}, {{"1", "2", 10}});
}

inline SystemInstance SingleVertex() {
  return Build({"v"}, {5}, {0.2}, {});
}

// The 13-part instance with unit edge weights whose five LRUs
// {1,2,3,4} {3,5,6,7} {7,8,9} {9,10,11} {2,11,12,13} form a cycle.
inline SystemInstance CycleExample(const std::vector<double>& cost,
                                   const std::vector<double>& rate) {
  std::vector<std::string> labels;
  for (int i = 1; i <= 13; ++i) labels.push_back(std::to_string(i));
  const std::vector<EdgeSpec> edges = {
      {"2", "1"},  {"2", "4"},   {"4", "3"},   {"4", "12"}, {"4", "5"},
      {"1", "3"},  {"3", "6"},   {"3", "5"},   {"5", "7"},  {"6", "7"},
      {"7", "8"},  {"8", "9"},   {"9", "10"},  {"10", "11"}, {"11", "12"},
      {"11", "13"}, {"12", "2"}, {"13", "2"},  {"11", "5"}};
  const std::vector<ArcSpec> arcs = {{{"5", "11"}, {"11", "12"}},
                                     {{"11", "12"}, {"12", "2"}},
                                     {{"12", "2"}, {"2", "4"}},
                                     {{"2", "4"}, {"4", "3"}},
                                     {{"4", "3"}, {"3", "5"}}};
  return Build(labels, cost, rate, edges, arcs);
}

inline std::vector<std::vector<std::string>> CycleExampleSets() {
  return {{"1", "2", "3", "4"},
          {"3", "5", "6", "7"},
          {"7", "8", "9"},
          {"9", "10", "11"},
          {"2", "11", "12", "13"}};
}

inline VertexSet Labels(const SystemInstance& inst,
                        const std::vector<std::string>& labels) {
  VertexSet s = inst.EmptyVertexSet();
  for (const std::string& l : labels) s.set(*inst.FindVertex(l));
  return s;
}

// Edge set from endpoint label pairs.
inline EdgeSet Edges(
    const SystemInstance& inst,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  EdgeSet s = inst.EmptyEdgeSet();
  for (const auto& [a, b] : pairs) {
    s.set(*inst.FindEdge(*inst.FindVertex(a), *inst.FindVertex(b)));
  }
  return s;
}

inline GeneratorConfig Config(int n, double delta, double delta_e, double q,
                              std::uint64_t seed) {
  GeneratorConfig c;
  c.num_vertices = n;
  c.avg_degree = delta;
  c.avg_out_degree = delta_e;
  c.edge_scale = q;
  c.seed = seed;
  return c;
}

// Gamma(Q) by plain DFS over the arcs from every boundary edge.
inline EdgeSet ReferenceRemovalSet(const SystemInstance& inst,
                                   const VertexSet& q) {
  const int m = inst.num_edges();
  std::vector<std::vector<int>> out(m);
  for (const Arc& a : inst.arcs()) out[a.from].push_back(a.to);
  EdgeSet seen(m);
  std::vector<int> stack;
  for (int e = 0; e < m; ++e) {
    const Edge& edge = inst.edge(e);
    if (q.test(edge.u) != q.test(edge.v) && !seen.test(e)) {
      seen.set(e);
      stack.push_back(e);
    }
  }
  while (!stack.empty()) {
    const int e = stack.back();
    stack.pop_back();
    for (int z : out[e]) {
      if (!seen.test(z)) {
        seen.set(z);
        stack.push_back(z);
      }
    }
  }
  return seen;
}

// omega(Q) straight from the definition.
inline double ReferenceOmega(const SystemInstance& inst, const VertexSet& q) {
  const EdgeSet gamma = ReferenceRemovalSet(inst, q);
  double rate = 0.0, purchase = 0.0, removal = 0.0;
  for (int v = 0; v < inst.num_vertices(); ++v) {
    if (q.test(v)) {
      rate += inst.vertex(v).rate;
      purchase += inst.vertex(v).cost;
    }
  }
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (gamma.test(e)) removal += inst.edge(e).weight;
  }
  return rate * (removal + purchase);
}

// Visits every set partition of {0..n-1} (restricted growth strings).
inline void ForEachPartition(
    int n, const std::function<void(const std::vector<VertexSet>&)>& visit) {
  std::vector<int> block(n, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      std::vector<VertexSet> sets(used, VertexSet(n));
      for (int v = 0; v < n; ++v) sets[block[v]].set(v);
      visit(sets);
      return;
    }
    for (int b = 0; b <= used && b < n; ++b) {
      block[i] = b;
      rec(i + 1, b == used ? used + 1 : used);
    }
  };
  rec(0, 0);
}

// Minimum of pi over all set partitions, connected blocks or not.
inline double ReferenceOptimum(const SystemInstance& inst) {
  double best = 1e300;
  ForEachPartition(inst.num_vertices(), [&](const std::vector<VertexSet>& s) {
    double total = 0.0;
    for (const VertexSet& q : s) total += ReferenceOmega(inst, q);
    if (total < best) best = total;
  });
  return best;
}

inline bool Near(double a, double b, double rel = 1e-6) {
  return std::abs(a - b) <= rel * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace lrud::testing

#endif  // LRUDESIGN_TESTS_TEST_UTIL_H_
