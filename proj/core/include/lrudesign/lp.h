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

#ifndef LRUDESIGN_LP_H_
#define LRUDESIGN_LP_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace lrud {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kEqual, kLessEqual, kGreaterEqual };

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kNumericalFailure };
std::string_view LpStatusName(LpStatus status);

struct LinearTerm {
  int index = 0;  // variable index in a row, row index in a column
  double coef = 0.0;
};

// min c'x  s.t.  rows (=, <=, >=),  lower <= x <= upper.
class LpModel {
 public:
  struct Row {
    std::vector<LinearTerm> terms;
    RowSense sense = RowSense::kEqual;
    double rhs = 0.0;
  };

  int AddVariable(double lower, double upper, double cost);
  // Duplicate variables in `terms` are merged; zero coefficients dropped.
  int AddRow(std::span<const LinearTerm> terms, RowSense sense, double rhs);
  int AddRow(std::initializer_list<LinearTerm> terms, RowSense sense,
             double rhs) {
    return AddRow(std::span<const LinearTerm>(terms.begin(), terms.size()),
                  sense, rhs);
  }
  void SetCost(int var, double cost) { cost_[var] = cost; }
  void SetBounds(int var, double lower, double upper);

  int num_vars() const { return static_cast<int>(cost_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  double cost(int var) const { return cost_[var]; }
  double lower(int var) const { return lower_[var]; }
  double upper(int var) const { return upper_[var]; }
  const Row& row(int r) const { return rows_[r]; }

  double Objective(std::span<const double> x) const;
  double RowActivity(int r, std::span<const double> x) const;
  // Largest violation of any row or bound at x.
  double MaxViolation(std::span<const double> x) const;

 private:
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<Row> rows_;
};

struct LpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  int refactor_interval = 100;
  std::int64_t max_iterations = 10'000'000;
};

struct LpSolution {
  LpStatus status = LpStatus::kNumericalFailure;
  std::vector<double> x;
  std::vector<double> duals;          // one per row, d(objective)/d(rhs)
  std::vector<double> reduced_costs;  // one per variable
  double objective = 0.0;
  std::int64_t iterations = 0;
};

// Bounded revised simplex (primal and dual) over the system A x - s = 0 with
// bounds on both x and the row activities s. The basis inverse is kept as a
// dense inverse of the kernel A[T, S], where S are the basic structurals and T
// the rows whose activity is nonbasic; the remaining rows are identity in B.
// Supports warm starts after bound changes (dual simplex) and after column
// additions (primal simplex).
class SimplexSolver {
 public:
  using Basis = std::vector<std::int8_t>;

  explicit SimplexSolver(const LpModel& model, LpOptions options = {});

  int num_vars() const { return n_; }
  int num_rows() const { return m_; }

  // Appends a structural column, nonbasic at its lower bound.
  int AddColumn(double lower, double upper, double cost,
                std::span<const LinearTerm> entries);
  void SetBounds(int var, double lower, double upper);
  double lower(int var) const { return lb_[var]; }
  double upper(int var) const { return ub_[var]; }

  LpStatus Solve();

  LpStatus status() const { return status_; }
  double objective() const;
  const std::vector<double>& primal() const { return x_; }
  std::vector<double> Duals() const;
  std::vector<double> ReducedCosts() const;
  LpSolution Solution() const;
  std::int64_t iterations() const { return iterations_; }

  Basis GetBasis() const;
  void SetBasis(const Basis& basis);

 private:
  enum Status : std::int8_t { kBasic = 0, kLower = 1, kUpper = 2, kZero = 3 };

  // Variable references: j >= 0 is structural j, j < 0 is the row activity
  // of row -1 - j.
  static int SlackRef(int r) { return -1 - r; }
  static int SlackRow(int ref) { return -1 - ref; }

  double& K(int i, int a) { return kinv_[static_cast<size_t>(i) * ld_ + a]; }
  double K(int i, int a) const {
    return kinv_[static_cast<size_t>(i) * ld_ + a];
  }
  int kdim() const { return static_cast<int>(basic_cols_.size()); }

  void BuildRows();
  void SlackBasis();
  bool Refactor();
  void EnsureCapacity(int k);
  void ComputePrimal();
  void ComputeDuals(bool phase1);
  void Ftran(int ref);
  void BtranRow(int leave_ref);
  double Value(int ref) const;
  double Lo(int ref) const;
  double Up(int ref) const;
  Status GetStatus(int ref) const;
  void SetStatus(int ref, Status s);
  double Infeasibility(int ref) const;
  double MaxPrimalInfeasibility() const;
  double MaxDualInfeasibility() const;
  void Pivot(int enter_ref, int leave_ref);
  void RemoveKernel(int t, int a);
  void NonbasicAtBound(int ref, Status s);
  Status NearestBoundStatus(double lo, double up, double value) const;

  LpStatus RunPrimal();
  // Returns false when the dual method gives up.
  bool RunDual(LpStatus* result);

  LpOptions opt_;
  int n_ = 0;
  int m_ = 0;
  std::vector<double> cost_, lb_, ub_;
  std::vector<double> rlb_, rub_;
  std::vector<std::vector<LinearTerm>> cols_;  // (row, coef)
  std::vector<std::vector<LinearTerm>> rows_;  // (col, coef)
  bool rows_dirty_ = true;

  std::vector<Status> st_;   // structural status
  std::vector<Status> sst_;  // row activity status
  std::vector<double> x_;    // structural values
  std::vector<double> s_;    // row activities

  std::vector<int> basic_cols_;  // S
  std::vector<int> pos_s_;       // structural -> position in S or -1
  std::vector<int> tight_rows_;  // T
  std::vector<int> pos_t_;       // row -> position in T or -1
  std::vector<double> kinv_;     // |S| x |T|, leading dimension ld_
  int ld_ = 0;
  int updates_ = 0;
  bool factored_ = false;

  // Scratch, sized n_/m_/k.
  std::vector<double> y_;     // duals
  std::vector<double> dj_;    // reduced costs of structurals
  std::vector<double> ds_;    // reduced costs of row activities
  std::vector<double> d_s_;   // FTRAN result on S
  std::vector<double> d_f_;   // FTRAN result on basic rows
  std::vector<double> rho_;   // BTRAN row result
  std::vector<int> df_nz_;    // rows where d_f_ may be nonzero
  std::vector<char> df_mark_;
  std::vector<int> rho_nz_;   // rows where rho_ may be nonzero
  std::vector<double> tmp_;

  LpStatus status_ = LpStatus::kNumericalFailure;
  std::int64_t iterations_ = 0;
};

LpSolution SolveLp(const LpModel& model, const LpOptions& options = {});

}  // namespace lrud

#endif  // LRUDESIGN_LP_H_
