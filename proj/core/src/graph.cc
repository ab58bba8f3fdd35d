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

#include "lrudesign/graph.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <utility>

namespace lrud {
namespace {

bool Positive(double x) { return std::isfinite(x) && x > 0.0; }

int SharedVertex(const Edge& a, const Edge& b) {
  if (a.u == b.u || a.u == b.v) return a.u;
  if (a.v == b.u || a.v == b.v) return a.v;
  return -1;
}

}  // namespace

SystemInstance SystemInstance::Validate(RawInstance raw) {
  SystemInstance inst;
  const int n = static_cast<int>(raw.vertices.size());

  std::set<std::string> labels;
  for (const Vertex& vx : raw.vertices) {
    if (!labels.insert(vx.label).second) {
      throw Error(ErrorCode::kDuplicateLabel, "vertex '" + vx.label + "'");
    }
  }

  std::set<std::pair<int, int>> pairs;
  for (Edge& e : raw.edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw Error(ErrorCode::kUnknownVertex, "edge endpoint out of range");
    }
    if (e.u == e.v) {
      throw Error(ErrorCode::kSelfLoop,
                  "edge {" + raw.vertices[e.u].label + "," +
                      raw.vertices[e.u].label + "}");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!pairs.insert({e.u, e.v}).second) {
      throw Error(ErrorCode::kDuplicateEdge,
                  "edge {" + raw.vertices[e.u].label + "," +
                      raw.vertices[e.v].label + "}");
    }
  }

  for (const Vertex& vx : raw.vertices) {
    if (!Positive(vx.cost)) {
      throw Error(ErrorCode::kNonPositiveParameter,
                  "cost of vertex '" + vx.label + "'");
    }
    if (!Positive(vx.rate)) {
      throw Error(ErrorCode::kNonPositiveParameter,
                  "rate of vertex '" + vx.label + "'");
    }
  }
  for (const Edge& e : raw.edges) {
    if (!Positive(e.weight)) {
      throw Error(ErrorCode::kNonPositiveParameter,
                  "weight of edge {" + raw.vertices[e.u].label + "," +
                      raw.vertices[e.v].label + "}");
    }
  }

  inst.vertices_ = std::move(raw.vertices);
  inst.edges_ = std::move(raw.edges);
  const int m = inst.num_edges();

  for (const Arc& a : raw.arcs) {
    if (a.from < 0 || a.from >= m || a.to < 0 || a.to >= m) {
      throw Error(ErrorCode::kUnknownEdge, "arc endpoint out of range");
    }
    if (a.from == a.to ||
        SharedVertex(inst.edges_[a.from], inst.edges_[a.to]) < 0) {
      throw Error(ErrorCode::kNonAdjacentArc, "arc (" + inst.EdgeName(a.from) +
                                                  ", " + inst.EdgeName(a.to) +
                                                  ")");
    }
  }
  inst.arcs_ = std::move(raw.arcs);

  inst.incident_.assign(n, {});
  for (int e = 0; e < m; ++e) {
    inst.incident_[inst.edges_[e].u].push_back(e);
    inst.incident_[inst.edges_[e].v].push_back(e);
  }
  inst.successors_.assign(m, {});
  for (const Arc& a : inst.arcs_) inst.successors_[a.from].push_back(a.to);
  for (auto& s : inst.successors_) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }

  // Kahn's algorithm; anything left over lies on a cycle.
  std::vector<int> indegree(m, 0);
  for (int e = 0; e < m; ++e) {
    for (int z : inst.successors_[e]) ++indegree[z];
  }
  std::deque<int> ready;
  for (int e = 0; e < m; ++e) {
    if (indegree[e] == 0) ready.push_back(e);
  }
  int seen = 0;
  while (!ready.empty()) {
    const int e = ready.front();
    ready.pop_front();
    ++seen;
    for (int z : inst.successors_[e]) {
      if (--indegree[z] == 0) ready.push_back(z);
    }
  }
  if (seen != m) {
    for (int e = 0; e < m; ++e) {
      if (indegree[e] > 0) {
        throw Error(ErrorCode::kCyclicPrecedence,
                    "cycle through edge " + inst.EdgeName(e));
      }
    }
  }
  return inst;
}

std::optional<int> SystemInstance::FindVertex(std::string_view label) const {
  for (int v = 0; v < num_vertices(); ++v) {
    if (vertices_[v].label == label) return v;
  }
  return std::nullopt;
}

std::optional<int> SystemInstance::FindEdge(int u, int v) const {
  if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices()) {
    return std::nullopt;
  }
  for (int e : incident_[u]) {
    if (edges_[e].u + edges_[e].v - u == v) return e;
  }
  return std::nullopt;
}

VertexSet SystemInstance::SetOf(
    std::initializer_list<std::string_view> labels) const {
  VertexSet set(num_vertices());
  for (std::string_view label : labels) {
    auto v = FindVertex(label);
    if (!v) throw Error(ErrorCode::kUnknownVertex, std::string(label));
    set.set(*v);
  }
  return set;
}

std::string SystemInstance::EdgeName(int e) const {
  return "{" + vertices_[edges_[e].u].label + "," +
         vertices_[edges_[e].v].label + "}";
}

RawInstance SystemInstance::ToRaw() const {
  return RawInstance{vertices_, edges_, arcs_};
}

SuccessorSets::SuccessorSets(const SystemInstance& inst) {
  const int m = inst.num_edges();
  h_.assign(m, EdgeSet(m));
  // Peel edges whose successors are all finished (reverse topological order).
  std::vector<int> pending(m);
  std::vector<std::vector<int>> predecessors(m);
  for (int e = 0; e < m; ++e) {
    pending[e] = static_cast<int>(inst.successors(e).size());
    for (int z : inst.successors(e)) predecessors[z].push_back(e);
  }
  std::deque<int> ready;
  for (int e = 0; e < m; ++e) {
    if (pending[e] == 0) ready.push_back(e);
  }
  while (!ready.empty()) {
    const int e = ready.front();
    ready.pop_front();
    h_[e].set(e);
    for (int z : inst.successors(e)) h_[e] |= h_[z];
    for (int p : predecessors[e]) {
      if (--pending[p] == 0) ready.push_back(p);
    }
  }
}

EdgeSet BoundaryEdges(const SystemInstance& inst, const VertexSet& q) {
  if (q.none()) throw Error(ErrorCode::kEmptyLru, "boundary of empty set");
  EdgeSet out(inst.num_edges());
  for (int e = 0; e < inst.num_edges(); ++e) {
    const Edge& ed = inst.edge(e);
    if (q.test(ed.u) != q.test(ed.v)) out.set(e);
  }
  return out;
}

EdgeSet RemovalSet(const SystemInstance& inst, const SuccessorSets& h,
                   const VertexSet& q) {
  if (q.none()) throw Error(ErrorCode::kEmptyLru, "removal set of empty set");
  EdgeSet out(inst.num_edges());
  for (int e = 0; e < inst.num_edges(); ++e) {
    const Edge& ed = inst.edge(e);
    if (q.test(ed.u) != q.test(ed.v)) out |= h[e];
  }
  return out;
}

double EdgeWeight(const SystemInstance& inst, const EdgeSet& edges) {
  double sum = 0.0;
  for (auto e = edges.find_first(); e != EdgeSet::npos; e = edges.find_next(e)) {
    sum += inst.edge(static_cast<int>(e)).weight;
  }
  return sum;
}

bool InducesConnected(const SystemInstance& inst, const VertexSet& q) {
  const auto start = q.find_first();
  if (start == VertexSet::npos) return false;
  VertexSet seen(inst.num_vertices());
  std::vector<int> stack = {static_cast<int>(start)};
  seen.set(start);
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int e : inst.incident(v)) {
      const int w = inst.edge(e).u + inst.edge(e).v - v;
      if (q.test(w) && !seen.test(w)) {
        seen.set(w);
        stack.push_back(w);
      }
    }
  }
  return seen == q;
}

std::vector<Component> ConnectedComponents(const SystemInstance& inst) {
  const int n = inst.num_vertices();
  std::vector<int> comp(n, -1);
  int count = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack = {s};
    comp[s] = count;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int e : inst.incident(v)) {
        const int w = inst.edge(e).u + inst.edge(e).v - v;
        if (comp[w] < 0) {
          comp[w] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }

  std::vector<Component> out(count);
  std::vector<int> local(n);
  std::vector<RawInstance> raws(count);
  for (int v = 0; v < n; ++v) {
    local[v] = static_cast<int>(out[comp[v]].vertex_map.size());
    out[comp[v]].vertex_map.push_back(v);
    raws[comp[v]].vertices.push_back(inst.vertex(v));
  }
  std::vector<int> local_edge(inst.num_edges());
  for (int e = 0; e < inst.num_edges(); ++e) {
    const Edge& ed = inst.edge(e);
    const int c = comp[ed.u];
    local_edge[e] = static_cast<int>(out[c].edge_map.size());
    out[c].edge_map.push_back(e);
    raws[c].edges.push_back(Edge{local[ed.u], local[ed.v], ed.weight});
  }
  for (const Arc& a : inst.arcs()) {
    const int c = comp[inst.edge(a.from).u];
    raws[c].arcs.push_back(Arc{local_edge[a.from], local_edge[a.to]});
  }
  for (int c = 0; c < count; ++c) {
    out[c].instance = SystemInstance::Validate(std::move(raws[c]));
  }
  return out;
}

}  // namespace lrud
