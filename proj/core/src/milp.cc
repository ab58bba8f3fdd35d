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

#include "lrudesign/milp.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <queue>
#include <utility>

#include "lrudesign/common.h"

namespace lrud {

std::string_view MilpStatusName(MilpStatus status) {
  switch (status) {
    case MilpStatus::kOptimal: return "Optimal";
    case MilpStatus::kInfeasible: return "Infeasible";
    case MilpStatus::kUnbounded: return "Unbounded";
    case MilpStatus::kLimitReached: return "LimitReached";
    case MilpStatus::kNumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

int MilpModel::AddBinary(double cost) {
  const int var = lp.AddVariable(0.0, 1.0, cost);
  binaries.push_back(var);
  return var;
}

int MilpModel::AddContinuous(double lower, double upper, double cost) {
  return lp.AddVariable(lower, upper, cost);
}

void MilpModel::Validate() const {
  for (int var : binaries) {
    if (var < 0 || var >= lp.num_vars() || lp.lower(var) != 0.0 ||
        lp.upper(var) != 1.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "binary variable without [0,1] bounds");
    }
  }
  if (!priority.empty() && priority.size() != binaries.size()) {
    throw Error(ErrorCode::kInvalidArgument, "priority size mismatch");
  }
}

namespace {

struct Node {
  double bound = 0.0;
  std::int64_t id = 0;
  std::vector<std::pair<int, std::int8_t>> fixes;
  SimplexSolver::Basis basis;
  double distance = 0.0;  // how far the last fix moved its variable
};

// Per-unit objective change observed when branching down and up.
class Pseudocosts {
 public:
  explicit Pseudocosts(int n) : sum_(2 * n, 0.0), count_(2 * n, 0) {}

  void Record(int var, int up, double distance, double gain) {
    if (distance <= 1e-9) return;
    const double unit = std::max(gain, 0.0) / distance;
    sum_[2 * var + up] += unit;
    ++count_[2 * var + up];
    total_[up] += unit;
    ++total_count_[up];
  }
  double Get(int var, int up) const {
    const int i = 2 * var + up;
    if (count_[i] > 0) return sum_[i] / count_[i];
    if (total_count_[up] > 0) return total_[up] / total_count_[up];
    return 1.0;
  }

 private:
  std::vector<double> sum_;
  std::vector<int> count_;
  double total_[2] = {0.0, 0.0};
  int total_count_[2] = {0, 0};
};

struct NodeOrder {
  bool operator()(const Node* a, const Node* b) const {
    if (a->bound != b->bound) return a->bound > b->bound;
    return a->id > b->id;
  }
};

}  // namespace

MilpSolution SolveMilp(const MilpModel& model, const MilpOptions& options) {
  model.Validate();
  const auto start_time = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_time)
        .count();
  };

  MilpSolution out;
  auto gap_abs = [&](double obj) {
    return options.relative_gap * (1.0 + std::abs(obj));
  };

  if (options.start &&
      static_cast<int>(options.start->size()) == model.lp.num_vars() &&
      model.lp.MaxViolation(*options.start) <= 1e-9) {
    bool integral = true;
    for (int var : model.binaries) {
      const double v = (*options.start)[var];
      integral = integral && std::abs(v - std::round(v)) <= 1e-9;
    }
    if (integral) {
      out.has_incumbent = true;
      out.x = *options.start;
      out.objective = model.lp.Objective(out.x);
    }
  }

  SimplexSolver solver(model.lp);
  const bool has_priority = !model.priority.empty();
  Pseudocosts pseudo(model.lp.num_vars());
  // Distance moved by the last fix of the node being solved.
  double current_distance = 0.0;
  double parent_bound = 0.0;

  std::priority_queue<Node*, std::vector<Node*>, NodeOrder> open;
  std::vector<std::unique_ptr<Node>> storage;
  std::int64_t next_id = 0;
  std::vector<std::pair<int, std::int8_t>> fixes;

  // Smallest bound among nodes discarded by the gap test.
  double discarded_bound = kInfinity;
  // Bound of the plunged child that has not been solved yet.
  double pending_bound = kInfinity;
  auto cleanup_bound = [&]() {
    double b = out.has_incumbent ? out.objective : kInfinity;
    b = std::min({b, discarded_bound, pending_bound});
    if (!open.empty()) b = std::min(b, open.top()->bound);
    return b;
  };

  auto solve_current = [&]() {
    ++out.nodes;
    LpStatus st = solver.Solve();
    if (st == LpStatus::kNumericalFailure) {
      solver.SetBasis({});
      st = solver.Solve();
    }
    return st;
  };

  LpStatus st = solve_current();
  if (st == LpStatus::kUnbounded) {
    out.status = MilpStatus::kUnbounded;
    out.lp_iterations = solver.iterations();
    out.seconds = elapsed();
    return out;
  }

  bool limit_hit = false;
  bool numerical = false;
  while (true) {
    bool prune = true;
    if (st == LpStatus::kNumericalFailure) {
      numerical = true;
      break;
    }
    if (st == LpStatus::kOptimal && !fixes.empty()) {
      pseudo.Record(fixes.back().first, fixes.back().second, current_distance,
                    solver.objective() - parent_bound);
    }
    if (st == LpStatus::kOptimal) {
      const double obj = solver.objective();
      if (out.has_incumbent && obj >= out.objective - gap_abs(out.objective)) {
        discarded_bound = std::min(discarded_bound, obj);
      } else {
        const std::vector<double>& x = solver.primal();
        // Pseudocost product score within the highest priority class.
        int branch = -1;
        int best_class = std::numeric_limits<int>::min();
        double best_score = -1.0;
        for (size_t b = 0; b < model.binaries.size(); ++b) {
          const int var = model.binaries[b];
          const double frac = std::abs(x[var] - std::round(x[var]));
          if (frac <= options.integrality_tol) continue;
          const int cls = has_priority ? model.priority[b] : 0;
          if (cls < best_class) continue;
          const double down = std::max(pseudo.Get(var, 0) * x[var], 1e-6);
          const double up = std::max(pseudo.Get(var, 1) * (1.0 - x[var]), 1e-6);
          const double score = down * up;
          if (cls > best_class || score > best_score * (1.0 + 1e-9)) {
            best_class = cls;
            best_score = score;
            branch = var;
          }
        }
        if (branch < 0) {
          if (!out.has_incumbent || obj < out.objective) {
            out.has_incumbent = true;
            out.objective = obj;
            out.x = x;
            for (int var : model.binaries) out.x[var] = std::round(out.x[var]);
          }
        } else {
          const std::int8_t first = x[branch] >= 0.5 ? 1 : 0;
          auto other = std::make_unique<Node>();
          other->bound = obj;
          other->id = next_id++;
          other->fixes = fixes;
          other->fixes.emplace_back(branch, static_cast<std::int8_t>(1 - first));
          other->basis = solver.GetBasis();
          other->distance = first == 1 ? x[branch] : 1.0 - x[branch];
          open.push(other.get());
          storage.push_back(std::move(other));
          fixes.emplace_back(branch, first);
          solver.SetBounds(branch, first, first);
          current_distance = first == 1 ? 1.0 - x[branch] : x[branch];
          pending_bound = obj;
          parent_bound = obj;
          prune = false;
        }
      }
    }
    const bool work_left = !prune || !open.empty();
    if (work_left && (out.nodes >= options.node_limit ||
                      elapsed() >= options.time_limit_seconds)) {
      limit_hit = true;
      break;
    }
    if (!prune) {
      st = solve_current();
      pending_bound = kInfinity;
      continue;
    }
    // Pick the next open node.
    Node* next = nullptr;
    while (!open.empty()) {
      Node* cand = open.top();
      if (out.has_incumbent &&
          cand->bound >= out.objective - gap_abs(out.objective)) {
        // Every remaining node is dominated.
        discarded_bound = std::min(discarded_bound, cand->bound);
        while (!open.empty()) open.pop();
        break;
      }
      open.pop();
      next = cand;
      break;
    }
    if (next == nullptr) break;
    for (const auto& [var, value] : fixes) {
      solver.SetBounds(var, model.lp.lower(var), model.lp.upper(var));
    }
    fixes = std::move(next->fixes);
    for (const auto& [var, value] : fixes) solver.SetBounds(var, value, value);
    solver.SetBasis(next->basis);
    parent_bound = next->bound;
    current_distance = next->distance;
    next->basis.clear();
    next->basis.shrink_to_fit();
    st = solve_current();
  }

  out.lp_iterations = solver.iterations();
  out.seconds = elapsed();
  if (numerical) {
    out.status = MilpStatus::kNumericalFailure;
    out.bound = cleanup_bound();
    return out;
  }
  if (limit_hit) {
    out.status = MilpStatus::kLimitReached;
    out.bound = cleanup_bound();
    return out;
  }
  if (!out.has_incumbent) {
    out.status = MilpStatus::kInfeasible;
    return out;
  }
  out.status = MilpStatus::kOptimal;
  out.bound = std::min(out.objective, cleanup_bound());
  return out;
}

}  // namespace lrud
