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

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "lrudesign/lp.h"

namespace lrud {
namespace {

// Largest violation of primal feasibility, dual sign conditions and
// complementary slackness.
double KktError(const LpModel& m, const LpSolution& s) {
  double err = m.MaxViolation(s.x);
  std::vector<double> d(m.num_vars());
  for (int j = 0; j < m.num_vars(); ++j) d[j] = m.cost(j);
  for (int r = 0; r < m.num_rows(); ++r) {
    for (const LinearTerm& t : m.row(r).terms) {
      d[t.index] -= s.duals[r] * t.coef;
    }
  }
  for (int j = 0; j < m.num_vars(); ++j) {
    const double x = s.x[j];
    const bool at_lo = std::abs(x - m.lower(j)) < 1e-7;
    const bool at_up = std::abs(x - m.upper(j)) < 1e-7;
    if (at_lo && at_up) continue;
    if (at_lo) {
      err = std::max(err, -d[j]);
    } else if (at_up) {
      err = std::max(err, d[j]);
    } else {
      err = std::max(err, std::abs(d[j]));
    }
  }
  for (int r = 0; r < m.num_rows(); ++r) {
    const double a = m.RowActivity(r, s.x);
    const double b = m.row(r).rhs;
    const double y = s.duals[r];
    if (m.row(r).sense == RowSense::kLessEqual) {
      err = std::max(err, y);
      if (a < b - 1e-7) err = std::max(err, std::abs(y));
    } else if (m.row(r).sense == RowSense::kGreaterEqual) {
      err = std::max(err, -y);
      if (a > b + 1e-7) err = std::max(err, std::abs(y));
    }
  }
  return err;
}

// Random model with a known feasible point unless `allow_infeasible`.
LpModel RandomModel(std::mt19937_64& g, int n, int m, bool boxed,
                    bool allow_infeasible) {
  std::uniform_real_distribution<double> u(-5, 5);
  LpModel lp;
  for (int j = 0; j < n; ++j) {
    const int kind = boxed ? 0 : static_cast<int>(g() % 4);
    const double lo = kind == 3 ? -kInfinity : std::floor(u(g));
    const double up = kind >= 2 ? kInfinity : lo + static_cast<double>(g() % 5);
    lp.AddVariable(lo, up, std::round(u(g)));
  }
  std::vector<double> x0(n);
  for (int j = 0; j < n; ++j) {
    const double lo = lp.lower(j), up = lp.upper(j);
    x0[j] = std::isfinite(lo) ? lo + (std::isfinite(up) ? 0.5 * (up - lo) : 1.0)
                              : (std::isfinite(up) ? up - 1.0 : 0.0);
  }
  for (int r = 0; r < m; ++r) {
    std::vector<LinearTerm> terms;
    for (int j = 0; j < n; ++j) {
      if (g() % 3 == 0) terms.push_back({j, std::round(u(g))});
    }
    double a = 0.0;
    for (const LinearTerm& t : terms) a += t.coef * x0[t.index];
    const int sense = static_cast<int>(g() % 3);
    const bool feasible = !allow_infeasible || g() % 5 != 0;
    const double rhs =
        !feasible ? a + u(g)
        : sense == 0 ? a
        : sense == 1 ? a + static_cast<double>(g() % 3)
                     : a - static_cast<double>(g() % 3);
    lp.AddRow(terms,
              sense == 0   ? RowSense::kEqual
              : sense == 1 ? RowSense::kLessEqual
                           : RowSense::kGreaterEqual,
              rhs);
  }
  return lp;
}

// Minimum over all vertices of a fully boxed model, found by solving every
// square system of active constraints. Returns +inf when infeasible.
double VertexEnumerationOptimum(const LpModel& lp) {
  const int n = lp.num_vars();
  // Candidate hyperplanes: rows (as equalities) and both bounds.
  std::vector<std::pair<Eigen::VectorXd, double>> planes;
  for (int r = 0; r < lp.num_rows(); ++r) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    for (const LinearTerm& t : lp.row(r).terms) a[t.index] += t.coef;
    planes.push_back({a, lp.row(r).rhs});
  }
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    a[j] = 1.0;
    planes.push_back({a, lp.lower(j)});
    planes.push_back({a, lp.upper(j)});
  }
  const int p = static_cast<int>(planes.size());
  double best = kInfinity;
  std::vector<int> pick(n);
  std::function<void(int, int)> rec = [&](int depth, int start) {
    if (depth == n) {
      Eigen::MatrixXd a(n, n);
      Eigen::VectorXd b(n);
      for (int i = 0; i < n; ++i) {
        a.row(i) = planes[pick[i]].first.transpose();
        b[i] = planes[pick[i]].second;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      if (lu.rank() < n) return;
      const Eigen::VectorXd x = lu.solve(b);
      std::vector<double> xv(x.data(), x.data() + n);
      if (lp.MaxViolation(xv) > 1e-7) return;
      best = std::min(best, lp.Objective(xv));
      return;
    }
    for (int i = start; i < p; ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return best;
}

TEST(SolveLp, SingleEquality) {
  LpModel lp;
  lp.AddVariable(0, 2, 1);
  lp.AddRow({{0, 1.0}}, RowSense::kEqual, 1.0);
  const LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[0], 1.0, 1e-12);
  EXPECT_NEAR(s.duals[0], 1.0, 1e-12);
  EXPECT_NEAR(s.objective, 1.0, 1e-12);
}

TEST(SolveLp, ReturnsVertexNotMidpoint) {
  LpModel lp;
  lp.AddVariable(0, 1, -1);
  lp.AddVariable(0, 1, -1);
  lp.AddRow({{0, 1.0}, {1, 1.0}}, RowSense::kLessEqual, 1.0);
  const LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -1.0, 1e-12);
  const bool vertex = (std::abs(s.x[0] - 1) < 1e-12 && std::abs(s.x[1]) < 1e-12) ||
                      (std::abs(s.x[1] - 1) < 1e-12 && std::abs(s.x[0]) < 1e-12);
  EXPECT_TRUE(vertex);
}

TEST(SolveLp, TwoVertexRestrictedMaster) {
  // Columns {1}, {2}, {1,2} with omega 1.1, 1.1, 0.4.
  LpModel lp;
  lp.AddVariable(0, kInfinity, 1.1);
  lp.AddVariable(0, kInfinity, 1.1);
  lp.AddVariable(0, kInfinity, 0.4);
  lp.AddRow({{0, 1.0}, {2, 1.0}}, RowSense::kEqual, 1.0);
  lp.AddRow({{1, 1.0}, {2, 1.0}}, RowSense::kEqual, 1.0);
  const LpSolution s = SolveLp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.x[2], 1.0, 1e-12);
  EXPECT_NEAR(s.objective, 0.4, 1e-12);
  EXPECT_NEAR(s.duals[0] + s.duals[1], 0.4, 1e-12);
}

TEST(SolveLp, InfeasibleAndUnbounded) {
  LpModel a;
  a.AddVariable(0, 1, 1);
  a.AddRow({{0, 1.0}}, RowSense::kGreaterEqual, 2.0);
  EXPECT_EQ(SolveLp(a).status, LpStatus::kInfeasible);
  LpModel b;
  b.AddVariable(0, kInfinity, -1);
  b.AddVariable(0, kInfinity, 0);
  b.AddRow({{0, 1.0}, {1, -1.0}}, RowSense::kLessEqual, 1.0);
  EXPECT_EQ(SolveLp(b).status, LpStatus::kUnbounded);
}

// KKT, strong duality and the basic-solution property on random models,
// plus warm starts after bound changes against cold solves.
TEST(SolveLp, RandomModelsSatisfyKkt) {
  std::mt19937_64 g(7);
  int optimal = 0;
  for (int it = 0; it < 1500; ++it) {
    const int n = 2 + static_cast<int>(g() % 29);
    const int m = 1 + static_cast<int>(g() % 25);
    LpModel lp = RandomModel(g, n, m, false, true);
    SimplexSolver solver(lp);
    const LpStatus st = solver.Solve();
    ASSERT_NE(st, LpStatus::kNumericalFailure) << "model " << it;
    if (st != LpStatus::kOptimal) continue;
    ++optimal;
    const LpSolution s = solver.Solution();
    ASSERT_LT(KktError(lp, s), 1e-6) << "model " << it;

    // Dual objective: sum y_r b_r plus reduced costs at bounds.
    double dual = 0.0;
    for (int r = 0; r < m; ++r) dual += s.duals[r] * lp.row(r).rhs;
    int between = 0;
    for (int j = 0; j < n; ++j) {
      dual += s.reduced_costs[j] * s.x[j];
      if (s.x[j] > lp.lower(j) + 1e-9 && s.x[j] < lp.upper(j) - 1e-9) {
        ++between;
      }
    }
    EXPECT_NEAR(dual, s.objective, 1e-7 * (1 + std::abs(s.objective)));
    EXPECT_LE(between, m);

    for (int rep = 0; rep < 3; ++rep) {
      const int j = static_cast<int>(g() % n);
      const double lo = lp.lower(j), up = lp.upper(j);
      if (!std::isfinite(lo)) continue;
      const double nu = std::isfinite(up) ? std::floor(0.5 * (lo + up)) : lo + 1;
      lp.SetBounds(j, lo, nu);
      solver.SetBounds(j, lo, nu);
      const LpStatus warm = solver.Solve();
      const LpSolution cold = SolveLp(lp);
      ASSERT_EQ(warm, cold.status) << "model " << it;
      if (warm != LpStatus::kOptimal) break;
      EXPECT_NEAR(solver.objective(), cold.objective,
                  1e-6 * (1 + std::abs(cold.objective)));
      EXPECT_LT(KktError(lp, solver.Solution()), 1e-6);
    }
  }
  EXPECT_GT(optimal, 300);
}

TEST(SolveLp, AgreesWithVertexEnumeration) {
  std::mt19937_64 g(11);
  int infeasible = 0;
  for (int it = 0; it < 300; ++it) {
    const int n = 2 + static_cast<int>(g() % 3);
    const int m = 1 + static_cast<int>(g() % 4);
    const LpModel lp = RandomModel(g, n, m, true, true);
    const double ref = VertexEnumerationOptimum(lp);
    const LpSolution s = SolveLp(lp);
    if (!std::isfinite(ref)) {
      ++infeasible;
      EXPECT_EQ(s.status, LpStatus::kInfeasible) << "model " << it;
    } else {
      ASSERT_EQ(s.status, LpStatus::kOptimal) << "model " << it;
      EXPECT_NEAR(s.objective, ref, 1e-7 * (1 + std::abs(ref)));
    }
  }
  EXPECT_GT(infeasible, 10);
}

TEST(SimplexSolver, ColumnAdditionsMatchColdSolve) {
  std::mt19937_64 g(3);
  for (int it = 0; it < 100; ++it) {
    // Partitioning rows kept feasible by expensive singleton columns.
    const int m = 3 + static_cast<int>(g() % 8);
    std::vector<std::pair<double, std::vector<LinearTerm>>> columns;
    for (int r = 0; r < m; ++r) {
      columns.push_back({10.0, {{r, 1.0}}});
    }
    auto build = [&] {
      LpModel lp;
      std::vector<std::vector<LinearTerm>> rows(m);
      for (const auto& [cost, entries] : columns) {
        const int j = lp.AddVariable(0, kInfinity, cost);
        for (const LinearTerm& t : entries) rows[t.index].push_back({j, t.coef});
      }
      for (int r = 0; r < m; ++r) lp.AddRow(rows[r], RowSense::kEqual, 1.0);
      return lp;
    };
    SimplexSolver solver(build());
    ASSERT_EQ(solver.Solve(), LpStatus::kOptimal);
    for (int add = 0; add < 15; ++add) {
      std::vector<LinearTerm> entries;
      for (int r = 0; r < m; ++r) {
        if (g() % 3 == 0) entries.push_back({r, 1.0});
      }
      if (entries.empty()) continue;
      const double cost = 1.0 + static_cast<double>(g() % 100) / 10.0;
      solver.AddColumn(0, kInfinity, cost, entries);
      columns.push_back({cost, entries});
      ASSERT_EQ(solver.Solve(), LpStatus::kOptimal);
      const LpModel lp = build();
      const LpSolution ref = SolveLp(lp);
      ASSERT_EQ(ref.status, LpStatus::kOptimal);
      EXPECT_NEAR(solver.objective(), ref.objective,
                  1e-9 * (1 + ref.objective));
      EXPECT_LT(KktError(lp, solver.Solution()), 1e-7);
    }
  }
}

}  // namespace
}  // namespace lrud
