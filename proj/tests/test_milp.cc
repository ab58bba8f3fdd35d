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

#include <cmath>
#include <random>

#include "lrudesign/common.h"
#include "lrudesign/milp.h"

namespace lrud {
namespace {

// Minimum over all 0/1 assignments of a pure binary model; +inf if none is
// feasible.
double BruteForce(const MilpModel& model) {
  const int n = model.lp.num_vars();
  double best = kInfinity;
  std::vector<double> x(n);
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    for (int j = 0; j < n; ++j) x[j] = (mask >> j) & 1 ? 1.0 : 0.0;
    if (model.lp.MaxViolation(x) > 1e-9) continue;
    best = std::min(best, model.lp.Objective(x));
  }
  return best;
}

MilpModel RandomBinaryModel(std::mt19937_64& g, int n, int m) {
  std::uniform_int_distribution<int> coef(-6, 6);
  MilpModel model;
  for (int j = 0; j < n; ++j) model.AddBinary(coef(g));
  for (int r = 0; r < m; ++r) {
    std::vector<LinearTerm> terms;
    double pos = 0.0;
    for (int j = 0; j < n; ++j) {
      if (g() % 2 == 0) {
        const double c = coef(g);
        terms.push_back({j, c});
        pos += std::max(c, 0.0);
      }
    }
    const int sense = static_cast<int>(g() % 4);
    const double rhs = std::floor(pos * 0.4) + static_cast<double>(g() % 2);
    model.lp.AddRow(terms,
                    sense == 0   ? RowSense::kEqual
                    : sense == 1 ? RowSense::kGreaterEqual
                                 : RowSense::kLessEqual,
                    sense == 1 ? -rhs : rhs);
  }
  return model;
}

TEST(SolveMilp, IntegralRootNeedsOneNode) {
  MilpModel model;
  model.AddBinary(1.0);
  model.AddBinary(2.0);
  model.lp.AddRow({{0, 1.0}, {1, 1.0}}, RowSense::kGreaterEqual, 1.0);
  const MilpSolution s = SolveMilp(model);
  ASSERT_EQ(s.status, MilpStatus::kOptimal);
  EXPECT_EQ(s.nodes, 1);
  EXPECT_NEAR(s.objective, 1.0, 1e-12);
}

TEST(SolveMilp, PackingPair) {
  MilpModel model;
  model.AddBinary(-1.0);
  model.AddBinary(-1.0);
  model.lp.AddRow({{0, 1.0}, {1, 1.0}}, RowSense::kLessEqual, 1.0);
  const MilpSolution s = SolveMilp(model);
  ASSERT_EQ(s.status, MilpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -1.0, 1e-12);
}

TEST(SolveMilp, FractionalRootIsBranched) {
  // max x0 + x1 + x2 with pairwise packing rows: LP optimum 1.5, MILP 1.
  MilpModel model;
  for (int j = 0; j < 3; ++j) model.AddBinary(-1.0);
  model.lp.AddRow({{0, 1.0}, {1, 1.0}}, RowSense::kLessEqual, 1.0);
  model.lp.AddRow({{1, 1.0}, {2, 1.0}}, RowSense::kLessEqual, 1.0);
  model.lp.AddRow({{0, 1.0}, {2, 1.0}}, RowSense::kLessEqual, 1.0);
  const MilpSolution s = SolveMilp(model);
  ASSERT_EQ(s.status, MilpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -1.0, 1e-9);
  EXPECT_GT(s.nodes, 1);
}

TEST(SolveMilp, InfeasibleModel) {
  MilpModel model;
  model.AddBinary(1.0);
  model.AddBinary(1.0);
  model.lp.AddRow({{0, 2.0}, {1, 2.0}}, RowSense::kEqual, 1.0);
  EXPECT_EQ(SolveMilp(model).status, MilpStatus::kInfeasible);
}

TEST(SolveMilp, MatchesEnumeration) {
  std::mt19937_64 g(2024);
  int feasible = 0, infeasible = 0;
  for (int it = 0; it < 400; ++it) {
    const int n = 3 + static_cast<int>(g() % 12);
    const int m = 1 + static_cast<int>(g() % 6);
    const MilpModel model = RandomBinaryModel(g, n, m);
    const double ref = BruteForce(model);
    const MilpSolution s = SolveMilp(model);
    if (!std::isfinite(ref)) {
      ++infeasible;
      EXPECT_EQ(s.status, MilpStatus::kInfeasible) << "model " << it;
      continue;
    }
    ++feasible;
    ASSERT_EQ(s.status, MilpStatus::kOptimal) << "model " << it;
    EXPECT_NEAR(s.objective, ref, 1e-6 * (1 + std::abs(ref))) << it;
    EXPECT_LT(model.lp.MaxViolation(s.x), 1e-6);
    for (double v : s.x) {
      EXPECT_LT(std::min(std::abs(v), std::abs(v - 1)), 1e-6);
    }
    EXPECT_GE(s.objective, s.bound - 1e-6 * (1 + std::abs(s.objective)));
  }
  EXPECT_GT(feasible, 100);
  EXPECT_GT(infeasible, 5);
}

TEST(SolveMilp, TwentyBinaries) {
  std::mt19937_64 g(99);
  for (int it = 0; it < 10; ++it) {
    const MilpModel model = RandomBinaryModel(g, 20, 4);
    const double ref = BruteForce(model);
    const MilpSolution s = SolveMilp(model);
    if (!std::isfinite(ref)) {
      EXPECT_EQ(s.status, MilpStatus::kInfeasible);
    } else {
      ASSERT_EQ(s.status, MilpStatus::kOptimal);
      EXPECT_NEAR(s.objective, ref, 1e-6 * (1 + std::abs(ref)));
    }
  }
}

TEST(SolveMilp, MixedContinuousVariables) {
  // min -x - 2y + 3z, y <= 0.6 + z, x + y <= 1.5, x binary, z binary,
  // y continuous in [0, 1].
  MilpModel model;
  const int x = model.AddBinary(-1.0);
  const int y = model.AddContinuous(0.0, 1.0, -2.0);
  const int z = model.AddBinary(3.0);
  model.lp.AddRow({{y, 1.0}, {z, -1.0}}, RowSense::kLessEqual, 0.6);
  model.lp.AddRow({{x, 1.0}, {y, 1.0}}, RowSense::kLessEqual, 1.5);
  const MilpSolution s = SolveMilp(model);
  ASSERT_EQ(s.status, MilpStatus::kOptimal);
  // Best is x = 1, y = 0.5, z = 0.
  EXPECT_NEAR(s.objective, -2.0, 1e-9);
  EXPECT_NEAR(s.x[y], 0.5, 1e-9);
  EXPECT_NEAR(s.x[z], 0.0, 1e-9);
}

TEST(SolveMilp, DeterministicAcrossRuns) {
  std::mt19937_64 g(5);
  for (int it = 0; it < 20; ++it) {
    const MilpModel model = RandomBinaryModel(g, 14, 5);
    const MilpSolution a = SolveMilp(model);
    const MilpSolution b = SolveMilp(model);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.nodes, b.nodes);
    EXPECT_EQ(a.x, b.x);
  }
}

TEST(SolveMilp, NodeLimitReportsIncumbentAndBound) {
  std::mt19937_64 g(17);
  int limited = 0;
  for (int it = 0; it < 50 && limited < 5; ++it) {
    const MilpModel model = RandomBinaryModel(g, 16, 5);
    const MilpSolution full = SolveMilp(model);
    if (full.status != MilpStatus::kOptimal) continue;
    MilpOptions options;
    options.node_limit = 2;
    const MilpSolution s = SolveMilp(model, options);
    if (s.status != MilpStatus::kLimitReached) continue;
    ++limited;
    EXPECT_LE(s.bound, full.objective + 1e-9);
    if (s.has_incumbent) {
      EXPECT_GE(s.objective, full.objective - 1e-9);
    }
  }
  EXPECT_GT(limited, 0);
}

TEST(SolveMilp, StartingPointIsUsed) {
  MilpModel model;
  for (int j = 0; j < 3; ++j) model.AddBinary(-1.0);
  model.lp.AddRow({{0, 1.0}, {1, 1.0}}, RowSense::kLessEqual, 1.0);
  model.lp.AddRow({{1, 1.0}, {2, 1.0}}, RowSense::kLessEqual, 1.0);
  model.lp.AddRow({{0, 1.0}, {2, 1.0}}, RowSense::kLessEqual, 1.0);
  MilpOptions options;
  options.node_limit = 1;
  options.start = std::vector<double>{0.0, 1.0, 0.0};
  const MilpSolution s = SolveMilp(model, options);
  ASSERT_TRUE(s.has_incumbent);
  EXPECT_NEAR(s.objective, -1.0, 1e-12);
}

TEST(MilpModel, ValidateRejectsWideBinaries) {
  MilpModel model;
  const int j = model.AddBinary(1.0);
  model.lp.SetBounds(j, 0.0, 2.0);
  EXPECT_THROW(model.Validate(), Error);
  MilpModel bad_priority;
  bad_priority.AddBinary(1.0);
  bad_priority.priority = {1, 2};
  EXPECT_THROW(bad_priority.Validate(), Error);
}

}  // namespace
}  // namespace lrud
