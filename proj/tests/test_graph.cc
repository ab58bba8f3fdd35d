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

#include <gtest/gtest.h>

#include <chrono>

#include "lrudesign/fixtures.h"
#include "lrudesign/graph.h"
#include "lrudesign/instance_gen.h"
#include "lrudesign/instance_io.h"
#include "test_util.h"

namespace lrud {
namespace {

using testing::Build;
using testing::Edges;
using testing::Labels;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(Validate, LaptopFixtureIsValid) {
  const SystemInstance laptop = Fixture("laptop");
  EXPECT_EQ(laptop.num_vertices(), 13);
  EXPECT_EQ(laptop.num_edges(), 23);
  EXPECT_EQ(laptop.num_arcs(), 24);
}

TEST(Validate, RejectsArcBetweenDisjointEdges) {
  const SystemInstance laptop = Fixture("laptop");
  RawInstance raw = laptop.ToRaw();
  const int al = *laptop.FindEdge(*laptop.FindVertex("A"),
                                  *laptop.FindVertex("L"));
  const int ij = *laptop.FindEdge(*laptop.FindVertex("I"),
                                  *laptop.FindVertex("J"));
  raw.arcs.push_back({al, ij});
  EXPECT_EQ(CodeOf([&] { SystemInstance::Validate(raw); }),
            ErrorCode::kNonAdjacentArc);
}

TEST(Validate, RejectsTwoCycle) {
  RawInstance raw;
  raw.vertices = {{"a", 1, 1}, {"b", 1, 1}, {"c", 1, 1}};
  raw.edges = {{0, 1, 1}, {1, 2, 1}};
  raw.arcs = {{0, 1}, {1, 0}};
  EXPECT_EQ(CodeOf([&] { SystemInstance::Validate(raw); }),
            ErrorCode::kCyclicPrecedence);
}

TEST(Validate, RejectsBadParametersAndShapes) {
  RawInstance base;
  base.vertices = {{"a", 1, 1}, {"b", 1, 1}};
  base.edges = {{0, 1, 1}};

  RawInstance r = base;
  r.vertices[0].cost = 0.0;
  EXPECT_EQ(CodeOf([&] { SystemInstance::Validate(r); }),
            ErrorCode::kNonPositiveParameter);
  r = base;
  r.vertices[1].rate = -1.0;
  EXPECT_EQ(CodeOf([&] { SystemInstance::Validate(r); }),
            ErrorCode::kNonPositiveParameter);
  r = base;
  r.edges[0].weight = 0.0;
  EXPECT_EQ(CodeOf([&] { SystemInstance::Validate(r); }),
            ErrorCode::kNonPositiveParameter);
  r = base;
  r.edges.push_back({1, 0, 2});
  EXPECT_EQ(CodeOf([&] { SystemInstance::Validate(r); }),
            ErrorCode::kDuplicateEdge);
  r = base;
  r.edges.push_back({1, 1, 2});
  EXPECT_EQ(CodeOf([&] { SystemInstance::Validate(r); }),
            ErrorCode::kSelfLoop);
  r = base;
  r.vertices[1].label = "a";
  EXPECT_EQ(CodeOf([&] { SystemInstance::Validate(r); }),
            ErrorCode::kDuplicateLabel);
}

TEST(Validate, EdgesStoredCanonically) {
  const SystemInstance inst =
      Build({"a", "b"}, {1, 1}, {1, 1}, {{"b", "a", 3}});
  EXPECT_EQ(inst.edge(0).u, 0);
  EXPECT_EQ(inst.edge(0).v, 1);
}

TEST(Components, LaptopIsOneComponent) {
  const SystemInstance laptop = Fixture("laptop");
  const auto parts = ConnectedComponents(laptop);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].instance.num_vertices(), 13);
  EXPECT_EQ(parts[0].instance.num_arcs(), laptop.num_arcs());
}

TEST(Components, TwoTriangles) {
  const SystemInstance inst = Build(
      {"a", "b", "c", "x", "y", "z"}, {1, 1, 1, 1, 1, 1},
      {1, 1, 1, 1, 1, 1},
      {{"a", "b"}, {"b", "c"}, {"c", "a"}, {"x", "y"}, {"y", "z"}, {"z", "x"}},
      {{{"a", "b"}, {"b", "c"}}, {{"x", "y"}, {"y", "z"}}});
  const auto parts = ConnectedComponents(inst);
  ASSERT_EQ(parts.size(), 2u);
  for (const Component& c : parts) {
    EXPECT_EQ(c.instance.num_vertices(), 3);
    EXPECT_EQ(c.instance.num_edges(), 3);
    EXPECT_EQ(c.instance.num_arcs(), 1);
  }
  EXPECT_EQ(parts[1].vertex_map, (std::vector<int>{3, 4, 5}));
}

TEST(Components, SingleVertex) {
  const auto parts = ConnectedComponents(testing::SingleVertex());
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].instance.num_edges(), 0);
}

TEST(Successors, LaptopClosures) {
  const SystemInstance laptop = Fixture("laptop");
  const SuccessorSets h(laptop);
  const int ce = *laptop.FindEdge(*laptop.FindVertex("C"),
                                  *laptop.FindVertex("E"));
  EXPECT_EQ(h[ce], Edges(laptop, {{"C", "E"},
                                  {"A", "L"},
                                  {"A", "M"},
                                  {"B", "M"},
                                  {"B", "L"},
                                  {"C", "L"}}));
  const int em = *laptop.FindEdge(*laptop.FindVertex("E"),
                                  *laptop.FindVertex("M"));
  EXPECT_EQ(h[em], Edges(laptop, {{"E", "M"},
                                  {"E", "L"},
                                  {"C", "E"},
                                  {"C", "L"},
                                  {"B", "L"},
                                  {"B", "M"},
                                  {"A", "L"},
                                  {"A", "M"}}));
}

TEST(Successors, NoArcsGivesSingletons) {
  const SystemInstance inst = Build({"a", "b", "c"}, {1, 1, 1}, {1, 1, 1},
                                    {{"a", "b"}, {"b", "c"}});
  const SuccessorSets h(inst);
  for (int e = 0; e < inst.num_edges(); ++e) {
    EXPECT_EQ(h[e].count(), 1u);
    EXPECT_TRUE(h[e].test(e));
  }
}

TEST(Boundary, LaptopPalmRest) {
  const SystemInstance laptop = Fixture("laptop");
  EXPECT_EQ(BoundaryEdges(laptop, laptop.SetOf({"E"})),
            Edges(laptop, {{"E", "L"}, {"E", "M"}, {"C", "E"}}));
  VertexSet all = laptop.EmptyVertexSet();
  all.set();
  EXPECT_TRUE(BoundaryEdges(laptop, all).none());
  EXPECT_THROW(BoundaryEdges(laptop, laptop.EmptyVertexSet()), Error);
}

TEST(Boundary, ChainLinks) {
  const SystemInstance chain = Fixture("chain");
  const VertexSet links =
      chain.SetOf({"1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11",
                   "12"});
  EXPECT_EQ(BoundaryEdges(chain, links),
            Edges(chain, {{"A", "3"}, {"B", "3"}}));
}

TEST(RemovalSet, LaptopAndChain) {
  const SystemInstance laptop = Fixture("laptop");
  const SuccessorSets h(laptop);
  EXPECT_EQ(RemovalSet(laptop, h, laptop.SetOf({"E"})),
            Edges(laptop, {{"A", "L"},
                           {"A", "M"},
                           {"B", "M"},
                           {"B", "L"},
                           {"C", "E"},
                           {"C", "L"},
                           {"E", "L"},
                           {"E", "M"}}));
  EXPECT_EQ(RemovalSet(laptop, h, laptop.SetOf({"C"})),
            Edges(laptop, {{"A", "L"},
                           {"A", "M"},
                           {"B", "M"},
                           {"B", "L"},
                           {"C", "E"},
                           {"C", "L"}}));

  const SystemInstance chain = Fixture("chain");
  const SuccessorSets hc(chain);
  const VertexSet links =
      chain.SetOf({"1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11",
                   "12"});
  EXPECT_EQ(RemovalSet(chain, hc, links),
            Edges(chain, {{"A", "3"}, {"B", "3"}, {"3", "4"}}));
  EXPECT_THROW(RemovalSet(chain, hc, chain.EmptyVertexSet()), Error);
}

// Closure is a fixed point, contains B(Q), and matches a plain DFS.
TEST(RemovalSet, PropertiesOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const int n = 8 + static_cast<int>(seed % 8);
    const SystemInstance inst =
        Generate(testing::Config(n, 2.0 + (seed % 3) * 0.5,
                                 0.5 + (seed % 3) * 0.5, 1.0, seed));
    const SuccessorSets h(inst);
    for (int e = 0; e < inst.num_edges(); ++e) {
      EdgeSet expect = inst.EmptyEdgeSet();
      expect.set(e);
      for (int z : inst.successors(e)) expect |= h[z];
      ASSERT_EQ(h[e], expect);
    }
    Rng rng(seed);
    for (int trial = 0; trial < 20; ++trial) {
      VertexSet q = inst.EmptyVertexSet();
      while (q.none()) {
        for (int v = 0; v < n; ++v) {
          if (rng.Uniform01() < 0.4) q.set(v);
        }
      }
      const EdgeSet gamma = RemovalSet(inst, h, q);
      const EdgeSet boundary = BoundaryEdges(inst, q);
      EXPECT_TRUE(boundary.is_subset_of(gamma));
      EXPECT_EQ(gamma, testing::ReferenceRemovalSet(inst, q));
      // Complement has the same boundary, hence the same removal set.
      VertexSet comp = ~q;
      if (comp.any()) {
        EXPECT_EQ(RemovalSet(inst, h, comp), gamma);
      }
    }
  }
}

TEST(RemovalSet, FixtureQueriesAreFast) {
  const SystemInstance laptop = Fixture("laptop");
  const SuccessorSets h(laptop);
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 1000; ++i) {
    RemovalSet(laptop, h, laptop.SetOf({"E"}));
  }
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  EXPECT_LT(ms / 1000, 1.0);
}

TEST(Connectivity, InducedSubgraphs) {
  const SystemInstance laptop = Fixture("laptop");
  EXPECT_TRUE(InducesConnected(laptop, laptop.SetOf({"A", "L"})));
  EXPECT_FALSE(InducesConnected(laptop, laptop.SetOf({"A", "K"})));
  EXPECT_FALSE(InducesConnected(laptop, laptop.EmptyVertexSet()));
}

TEST(InstanceIo, RoundTripAndArcDirection) {
  const SystemInstance laptop = Fixture("laptop");
  const SystemInstance again = InstanceFromJson(InstanceToJson(laptop));
  ASSERT_EQ(again.num_edges(), laptop.num_edges());
  ASSERT_EQ(again.num_arcs(), laptop.num_arcs());
  for (int a = 0; a < laptop.num_arcs(); ++a) {
    EXPECT_EQ(again.arcs()[a].from, laptop.arcs()[a].from);
    EXPECT_EQ(again.arcs()[a].to, laptop.arcs()[a].to);
  }
  const SystemInstance parsed = ParseInstance(R"({
    "vertices": [{"id": "x", "cost": 1, "rate": 1},
                 {"id": "y", "cost": 1, "rate": 1},
                 {"id": "z", "cost": 1, "rate": 1}],
    "edges": [{"u": "x", "v": "y", "w": 1}, {"u": "z", "v": "y", "w": 2}],
    "arcs": [{"from": ["x", "y"], "to": ["y", "z"]}]})");
  const SuccessorSets h(parsed);
  EXPECT_EQ(h[0].count(), 2u);
  EXPECT_EQ(h[1].count(), 1u);
  EXPECT_THROW(ParseInstance("{not json"), Error);
  EXPECT_THROW(ParseInstance(R"({"vertices": [{"id": "x", "cost": 1,
      "rate": 1}], "edges": [{"u": "x", "v": "q", "w": 1}], "arcs": []})"),
               Error);
}

TEST(Fixtures, UnknownName) {
  EXPECT_EQ(CodeOf([] { Fixture("toaster"); }), ErrorCode::kUnknownFixture);
  EXPECT_EQ(FixtureNames(), (std::vector<std::string>{"laptop", "chain"}));
}

}  // namespace
}  // namespace lrud
