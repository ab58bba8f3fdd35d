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

#ifndef LRUDESIGN_GRAPH_H_
#define LRUDESIGN_GRAPH_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lrudesign/common.h"

namespace lrud {

struct Vertex {
  std::string label;
  double cost = 0.0;  // purchase cost l(v)
  double rate = 0.0;  // failure rate lambda(v)
};

// Undirected connection, stored with u < v after validation.
struct Edge {
  int u = 0;
  int v = 0;
  double weight = 0.0;  // break-and-reconnect cost w(e)
};

// Precedence arc between edge indices: `to` must be broken before `from`.
struct Arc {
  int from = 0;
  int to = 0;
};

// Unvalidated input. Edge endpoints may be in either order.
struct RawInstance {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Arc> arcs;
};

// Connection graph plus precedence graph. Immutable once built.
class SystemInstance {
 public:
  SystemInstance() = default;

  // Checks all model rules and throws Error naming the first violation.
  static SystemInstance Validate(RawInstance raw);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }

  const Vertex& vertex(int v) const { return vertices_[v]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  // Edge indices incident to v, ascending.
  const std::vector<int>& incident(int v) const { return incident_[v]; }
  // Direct successors of edge e in the precedence graph, ascending.
  const std::vector<int>& successors(int e) const { return successors_[e]; }

  std::optional<int> FindVertex(std::string_view label) const;
  std::optional<int> FindEdge(int u, int v) const;
  // Vertex indices for labels; throws kUnknownVertex.
  VertexSet SetOf(std::initializer_list<std::string_view> labels) const;
  VertexSet EmptyVertexSet() const { return VertexSet(num_vertices()); }
  EdgeSet EmptyEdgeSet() const { return EdgeSet(num_edges()); }
  std::string EdgeName(int e) const;

  RawInstance ToRaw() const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> incident_;
  std::vector<std::vector<int>> successors_;
};

// H(e) for every edge: e plus all edges reachable from e in the precedence
// graph.
class SuccessorSets {
 public:
  SuccessorSets() = default;
  explicit SuccessorSets(const SystemInstance& inst);

  const EdgeSet& operator[](int e) const { return h_[e]; }
  int size() const { return static_cast<int>(h_.size()); }

 private:
  std::vector<EdgeSet> h_;
};

// B(Q): edges with exactly one endpoint in q.
EdgeSet BoundaryEdges(const SystemInstance& inst, const VertexSet& q);

// Gamma(Q): union of H(e) over the boundary edges of q.
EdgeSet RemovalSet(const SystemInstance& inst, const SuccessorSets& h,
                   const VertexSet& q);

double EdgeWeight(const SystemInstance& inst, const EdgeSet& edges);

// True when q is nonempty and induces a connected subgraph.
bool InducesConnected(const SystemInstance& inst, const VertexSet& q);

struct Component {
  SystemInstance instance;
  std::vector<int> vertex_map;  // local vertex -> parent vertex
  std::vector<int> edge_map;    // local edge -> parent edge
};

// Splits into connected components ordered by smallest vertex index.
std::vector<Component> ConnectedComponents(const SystemInstance& inst);

}  // namespace lrud

#endif  // LRUDESIGN_GRAPH_H_
