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

#include "lrudesign/lp.h"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "lrudesign/common.h"

namespace lrud {
namespace {

constexpr int kVerifyRefactorUpdates = 20;

}  // namespace

std::string_view LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "Optimal";
    case LpStatus::kInfeasible: return "Infeasible";
    case LpStatus::kUnbounded: return "Unbounded";
    case LpStatus::kNumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

int LpModel::AddVariable(double lower, double upper, double cost) {
  if (!(lower <= upper) || std::isnan(cost) || std::isinf(cost)) {
    throw Error(ErrorCode::kInvalidArgument, "bad variable bounds or cost");
  }
  cost_.push_back(cost);
  lower_.push_back(lower);
  upper_.push_back(upper);
  return num_vars() - 1;
}

int LpModel::AddRow(std::span<const LinearTerm> terms, RowSense sense,
                    double rhs) {
  std::map<int, double> merged;
  for (const LinearTerm& t : terms) {
    if (t.index < 0 || t.index >= num_vars() || !std::isfinite(t.coef)) {
      throw Error(ErrorCode::kInvalidArgument, "bad row term");
    }
    merged[t.index] += t.coef;
  }
  Row row;
  row.sense = sense;
  row.rhs = rhs;
  for (const auto& [var, coef] : merged) {
    if (coef != 0.0) row.terms.push_back({var, coef});
  }
  rows_.push_back(std::move(row));
  return num_rows() - 1;
}

void LpModel::SetBounds(int var, double lower, double upper) {
  if (!(lower <= upper)) {
    throw Error(ErrorCode::kInvalidArgument, "lower bound above upper bound");
  }
  lower_[var] = lower;
  upper_[var] = upper;
}

double LpModel::Objective(std::span<const double> x) const {
  double sum = 0.0;
  for (int j = 0; j < num_vars(); ++j) sum += cost_[j] * x[j];
  return sum;
}

double LpModel::RowActivity(int r, std::span<const double> x) const {
  double sum = 0.0;
  for (const LinearTerm& t : rows_[r].terms) sum += t.coef * x[t.index];
  return sum;
}

double LpModel::MaxViolation(std::span<const double> x) const {
  double worst = 0.0;
  for (int j = 0; j < num_vars(); ++j) {
    worst = std::max({worst, lower_[j] - x[j], x[j] - upper_[j]});
  }
  for (int r = 0; r < num_rows(); ++r) {
    const double a = RowActivity(r, x);
    const double b = rows_[r].rhs;
    switch (rows_[r].sense) {
      case RowSense::kEqual: worst = std::max(worst, std::abs(a - b)); break;
      case RowSense::kLessEqual: worst = std::max(worst, a - b); break;
      case RowSense::kGreaterEqual: worst = std::max(worst, b - a); break;
    }
  }
  return worst;
}

SimplexSolver::SimplexSolver(const LpModel& model, LpOptions options)
    : opt_(options), n_(model.num_vars()), m_(model.num_rows()) {
  cost_.resize(n_);
  lb_.resize(n_);
  ub_.resize(n_);
  cols_.assign(n_, {});
  for (int j = 0; j < n_; ++j) {
    cost_[j] = model.cost(j);
    lb_[j] = model.lower(j);
    ub_[j] = model.upper(j);
  }
  rlb_.resize(m_);
  rub_.resize(m_);
  for (int r = 0; r < m_; ++r) {
    const LpModel::Row& row = model.row(r);
    for (const LinearTerm& t : row.terms) cols_[t.index].push_back({r, t.coef});
    switch (row.sense) {
      case RowSense::kEqual:
        rlb_[r] = rub_[r] = row.rhs;
        break;
      case RowSense::kLessEqual:
        rlb_[r] = -kInfinity;
        rub_[r] = row.rhs;
        break;
      case RowSense::kGreaterEqual:
        rlb_[r] = row.rhs;
        rub_[r] = kInfinity;
        break;
    }
  }
  st_.assign(n_, kLower);
  sst_.assign(m_, kBasic);
  x_.assign(n_, 0.0);
  s_.assign(m_, 0.0);
  pos_s_.assign(n_, -1);
  pos_t_.assign(m_, -1);
  SlackBasis();
}

int SimplexSolver::AddColumn(double lower, double upper, double cost,
                             std::span<const LinearTerm> entries) {
  if (!(lower <= upper)) {
    throw Error(ErrorCode::kInvalidArgument, "lower bound above upper bound");
  }
  cost_.push_back(cost);
  lb_.push_back(lower);
  ub_.push_back(upper);
  std::vector<LinearTerm> col;
  for (const LinearTerm& t : entries) {
    if (t.index < 0 || t.index >= m_) {
      throw Error(ErrorCode::kInvalidArgument, "column row out of range");
    }
    if (t.coef != 0.0) col.push_back(t);
  }
  std::sort(col.begin(), col.end(),
            [](const LinearTerm& a, const LinearTerm& b) {
              return a.index < b.index;
            });
  cols_.push_back(std::move(col));
  const Status s = NearestBoundStatus(lower, upper, 0.0);
  st_.push_back(s);
  x_.push_back(s == kLower ? lower : s == kUpper ? upper : 0.0);
  pos_s_.push_back(-1);
  ++n_;
  rows_dirty_ = true;
  return n_ - 1;
}

void SimplexSolver::SetBounds(int var, double lower, double upper) {
  if (!(lower <= upper)) {
    throw Error(ErrorCode::kInvalidArgument, "lower bound above upper bound");
  }
  lb_[var] = lower;
  ub_[var] = upper;
  if (st_[var] != kBasic) {
    Status s = st_[var];
    if (s == kLower && !std::isfinite(lower)) s = kUpper;
    if (s == kUpper && !std::isfinite(upper)) s = kLower;
    if (s == kZero || !std::isfinite(s == kLower ? lower : upper)) {
      s = NearestBoundStatus(lower, upper, x_[var]);
    }
    NonbasicAtBound(var, s);
  }
}

SimplexSolver::Status SimplexSolver::NearestBoundStatus(double lo, double up,
                                                        double value) const {
  const bool has_lo = std::isfinite(lo);
  const bool has_up = std::isfinite(up);
  if (has_lo && has_up) {
    return std::abs(value - lo) <= std::abs(up - value) ? kLower : kUpper;
  }
  if (has_lo) return kLower;
  if (has_up) return kUpper;
  return kZero;
}

void SimplexSolver::BuildRows() {
  rows_.assign(m_, {});
  for (int j = 0; j < n_; ++j) {
    for (const LinearTerm& t : cols_[j]) rows_[t.index].push_back({j, t.coef});
  }
  rows_dirty_ = false;
  dj_.assign(n_, 0.0);
}

double SimplexSolver::Value(int ref) const {
  return ref >= 0 ? x_[ref] : s_[SlackRow(ref)];
}
double SimplexSolver::Lo(int ref) const {
  return ref >= 0 ? lb_[ref] : rlb_[SlackRow(ref)];
}
double SimplexSolver::Up(int ref) const {
  return ref >= 0 ? ub_[ref] : rub_[SlackRow(ref)];
}
SimplexSolver::Status SimplexSolver::GetStatus(int ref) const {
  return ref >= 0 ? st_[ref] : sst_[SlackRow(ref)];
}
void SimplexSolver::SetStatus(int ref, Status s) {
  if (ref >= 0) {
    st_[ref] = s;
  } else {
    sst_[SlackRow(ref)] = s;
  }
}

void SimplexSolver::NonbasicAtBound(int ref, Status s) {
  SetStatus(ref, s);
  const double v = s == kLower ? Lo(ref) : s == kUpper ? Up(ref) : 0.0;
  if (ref >= 0) {
    x_[ref] = v;
  } else {
    s_[SlackRow(ref)] = v;
  }
}

double SimplexSolver::Infeasibility(int ref) const {
  const double v = Value(ref);
  return std::max({0.0, Lo(ref) - v, v - Up(ref)});
}

void SimplexSolver::SlackBasis() {
  for (int j = 0; j < n_; ++j) {
    pos_s_[j] = -1;
    NonbasicAtBound(j, NearestBoundStatus(lb_[j], ub_[j], x_[j]));
  }
  for (int r = 0; r < m_; ++r) {
    sst_[r] = kBasic;
    pos_t_[r] = -1;
  }
  basic_cols_.clear();
  tight_rows_.clear();
  kinv_.clear();
  ld_ = 0;
  updates_ = 0;
  factored_ = true;
}

void SimplexSolver::EnsureCapacity(int k) {
  if (k <= ld_) return;
  const int new_ld = std::max(k, 2 * ld_ + 8);
  std::vector<double> grown(static_cast<size_t>(new_ld) * new_ld, 0.0);
  const int cur = kdim();
  for (int i = 0; i < cur; ++i) {
    std::copy_n(&kinv_[static_cast<size_t>(i) * ld_], cur,
                &grown[static_cast<size_t>(i) * new_ld]);
  }
  kinv_.swap(grown);
  ld_ = new_ld;
}

bool SimplexSolver::Refactor() {
  if (rows_dirty_) BuildRows();
  const int k = kdim();
  updates_ = 0;
  if (static_cast<int>(tight_rows_.size()) != k) return false;
  if (k == 0) {
    factored_ = true;
    return true;
  }
  std::vector<Eigen::Triplet<double>> triplets;
  for (int i = 0; i < k; ++i) {
    for (const LinearTerm& t : cols_[basic_cols_[i]]) {
      const int a = pos_t_[t.index];
      if (a >= 0) triplets.emplace_back(a, i, t.coef);
    }
  }
  Eigen::SparseMatrix<double> kmat(k, k);
  kmat.setFromTriplets(triplets.begin(), triplets.end());
  kmat.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(kmat);
  if (lu.info() != Eigen::Success) return false;
  const Eigen::MatrixXd inv =
      lu.solve(Eigen::MatrixXd::Identity(k, k));
  if (lu.info() != Eigen::Success || !inv.allFinite() ||
      inv.cwiseAbs().maxCoeff() > 1e11) {
    return false;
  }
  EnsureCapacity(k);
  for (int i = 0; i < k; ++i) {
    for (int a = 0; a < k; ++a) K(i, a) = inv(i, a);
  }
  factored_ = true;
  return true;
}

void SimplexSolver::ComputePrimal() {
  const int k = kdim();
  for (int j = 0; j < n_; ++j) {
    if (st_[j] != kBasic) NonbasicAtBound(j, st_[j]);
  }
  for (int r = 0; r < m_; ++r) {
    if (sst_[r] != kBasic) NonbasicAtBound(SlackRef(r), sst_[r]);
  }
  tmp_.assign(k, 0.0);
  for (int a = 0; a < k; ++a) tmp_[a] = s_[tight_rows_[a]];
  for (int j = 0; j < n_; ++j) {
    if (st_[j] == kBasic || x_[j] == 0.0) continue;
    for (const LinearTerm& t : cols_[j]) {
      const int a = pos_t_[t.index];
      if (a >= 0) tmp_[a] -= t.coef * x_[j];
    }
  }
  for (int i = 0; i < k; ++i) {
    double v = 0.0;
    const double* row = &kinv_[static_cast<size_t>(i) * ld_];
    for (int a = 0; a < k; ++a) v += row[a] * tmp_[a];
    x_[basic_cols_[i]] = v;
  }
  std::vector<double> act(m_, 0.0);
  for (int j = 0; j < n_; ++j) {
    if (x_[j] == 0.0) continue;
    for (const LinearTerm& t : cols_[j]) act[t.index] += t.coef * x_[j];
  }
  for (int r = 0; r < m_; ++r) {
    if (sst_[r] == kBasic) s_[r] = act[r];
  }
}

void SimplexSolver::ComputeDuals(bool phase1) {
  const int k = kdim();
  auto basic_cost = [&](int ref) {
    if (!phase1) return ref >= 0 ? cost_[ref] : 0.0;
    const double v = Value(ref);
    if (v < Lo(ref) - opt_.feasibility_tol) return -1.0;
    if (v > Up(ref) + opt_.feasibility_tol) return 1.0;
    return 0.0;
  };
  y_.assign(m_, 0.0);
  for (int r = 0; r < m_; ++r) {
    if (sst_[r] == kBasic) y_[r] = -basic_cost(SlackRef(r));
  }
  tmp_.assign(k, 0.0);
  for (int i = 0; i < k; ++i) {
    const int j = basic_cols_[i];
    double rhs = basic_cost(j);
    for (const LinearTerm& t : cols_[j]) {
      if (pos_t_[t.index] < 0) rhs -= y_[t.index] * t.coef;
    }
    tmp_[i] = rhs;
  }
  std::vector<double> yt(k, 0.0);
  for (int i = 0; i < k; ++i) {
    const double c = tmp_[i];
    if (c == 0.0) continue;
    const double* row = &kinv_[static_cast<size_t>(i) * ld_];
    for (int a = 0; a < k; ++a) yt[a] += c * row[a];
  }
  for (int a = 0; a < k; ++a) y_[tight_rows_[a]] = yt[a];

  dj_.assign(n_, 0.0);
  for (int j = 0; j < n_; ++j) {
    if (st_[j] == kBasic) continue;
    double d = phase1 ? 0.0 : cost_[j];
    for (const LinearTerm& t : cols_[j]) d -= y_[t.index] * t.coef;
    dj_[j] = d;
  }
  ds_.assign(m_, 0.0);
  for (int r = 0; r < m_; ++r) {
    if (sst_[r] != kBasic) ds_[r] = y_[r];
  }
}

void SimplexSolver::Ftran(int ref) {
  const int k = kdim();
  d_s_.assign(k, 0.0);
  if (static_cast<int>(d_f_.size()) != m_) {
    d_f_.assign(m_, 0.0);
    df_mark_.assign(m_, 0);
    df_nz_.clear();
  }
  for (int r : df_nz_) {
    d_f_[r] = 0.0;
    df_mark_[r] = 0;
  }
  df_nz_.clear();
  auto add = [&](int r, double v) {
    if (!df_mark_[r]) {
      df_mark_[r] = 1;
      df_nz_.push_back(r);
    }
    d_f_[r] += v;
  };
  if (ref >= 0) {
    for (const LinearTerm& t : cols_[ref]) {
      const int a = pos_t_[t.index];
      if (a < 0) continue;
      for (int i = 0; i < k; ++i) d_s_[i] += K(i, a) * t.coef;
    }
  } else {
    const int a = pos_t_[SlackRow(ref)];
    for (int i = 0; i < k; ++i) d_s_[i] = -K(i, a);
  }
  for (int i = 0; i < k; ++i) {
    const double di = d_s_[i];
    if (di == 0.0) continue;
    for (const LinearTerm& t : cols_[basic_cols_[i]]) add(t.index, t.coef * di);
  }
  if (ref >= 0) {
    for (const LinearTerm& t : cols_[ref]) add(t.index, -t.coef);
  }
  for (int r : df_nz_) {
    if (pos_t_[r] >= 0) d_f_[r] = 0.0;
  }
}

void SimplexSolver::BtranRow(int leave_ref) {
  const int k = kdim();
  if (static_cast<int>(rho_.size()) != m_) {
    rho_.assign(m_, 0.0);
    rho_nz_.clear();
  }
  for (int r : rho_nz_) rho_[r] = 0.0;
  rho_nz_.assign(tight_rows_.begin(), tight_rows_.end());
  if (leave_ref >= 0) {
    const int t = pos_s_[leave_ref];
    for (int a = 0; a < k; ++a) rho_[tight_rows_[a]] = K(t, a);
  } else {
    const int r = SlackRow(leave_ref);
    rho_[r] = -1.0;
    rho_nz_.push_back(r);
    for (const LinearTerm& e : rows_[r]) {
      const int i = pos_s_[e.index];
      if (i < 0) continue;
      const double* row = &kinv_[static_cast<size_t>(i) * ld_];
      for (int a = 0; a < k; ++a) rho_[tight_rows_[a]] += e.coef * row[a];
    }
  }
}

double SimplexSolver::MaxPrimalInfeasibility() const {
  double worst = 0.0;
  for (int j : basic_cols_) worst = std::max(worst, Infeasibility(j));
  for (int r = 0; r < m_; ++r) {
    if (sst_[r] == kBasic) worst = std::max(worst, Infeasibility(SlackRef(r)));
  }
  return worst;
}

double SimplexSolver::MaxDualInfeasibility() const {
  double worst = 0.0;
  auto check = [&](Status s, double lo, double up, double d) {
    if (s == kBasic || lo == up) return;
    if (s == kLower) worst = std::max(worst, -d);
    if (s == kUpper) worst = std::max(worst, d);
    if (s == kZero) worst = std::max(worst, std::abs(d));
  };
  for (int j = 0; j < n_; ++j) check(st_[j], lb_[j], ub_[j], dj_[j]);
  for (int r = 0; r < m_; ++r) check(sst_[r], rlb_[r], rub_[r], ds_[r]);
  return worst;
}

void SimplexSolver::RemoveKernel(int t, int a) {
  const int k = kdim();
  const int last = k - 1;
  if (t != last) {
    std::copy_n(&kinv_[static_cast<size_t>(last) * ld_], k,
                &kinv_[static_cast<size_t>(t) * ld_]);
    basic_cols_[t] = basic_cols_[last];
    pos_s_[basic_cols_[t]] = t;
  }
  if (a != last) {
    for (int i = 0; i < last; ++i) K(i, a) = K(i, last);
    tight_rows_[a] = tight_rows_[last];
    pos_t_[tight_rows_[a]] = a;
  }
  basic_cols_.pop_back();
  tight_rows_.pop_back();
}

// Updates the kernel inverse for a basis change. Requires d_s_/d_f_ to hold
// the FTRAN of the entering variable.
void SimplexSolver::Pivot(int enter_ref, int leave_ref) {
  const int k = kdim();
  if (enter_ref >= 0 && leave_ref >= 0) {
    // Column replacement in K.
    const int t = pos_s_[leave_ref];
    const double piv = d_s_[t];
    double* prow = &kinv_[static_cast<size_t>(t) * ld_];
    for (int a = 0; a < k; ++a) prow[a] /= piv;
    for (int i = 0; i < k; ++i) {
      if (i == t || d_s_[i] == 0.0) continue;
      const double f = d_s_[i];
      double* row = &kinv_[static_cast<size_t>(i) * ld_];
      for (int a = 0; a < k; ++a) row[a] -= f * prow[a];
    }
    pos_s_[leave_ref] = -1;
    basic_cols_[t] = enter_ref;
    pos_s_[enter_ref] = t;
  } else if (enter_ref >= 0) {
    // Row r joins T and the entering column joins S: bordered inverse.
    const int r = SlackRow(leave_ref);
    std::vector<double> g(k, 0.0);
    for (const LinearTerm& e : rows_[r]) {
      const int i = pos_s_[e.index];
      if (i < 0) continue;
      const double* row = &kinv_[static_cast<size_t>(i) * ld_];
      for (int a = 0; a < k; ++a) g[a] += e.coef * row[a];
    }
    const double s = -d_f_[r];
    EnsureCapacity(k + 1);
    for (int i = 0; i < k; ++i) {
      const double wi = d_s_[i] / s;
      double* row = &kinv_[static_cast<size_t>(i) * ld_];
      if (wi != 0.0) {
        for (int a = 0; a < k; ++a) row[a] += wi * g[a];
      }
      row[k] = -wi;
    }
    double* nrow = &kinv_[static_cast<size_t>(k) * ld_];
    for (int a = 0; a < k; ++a) nrow[a] = -g[a] / s;
    nrow[k] = 1.0 / s;
    basic_cols_.push_back(enter_ref);
    pos_s_[enter_ref] = k;
    tight_rows_.push_back(r);
    pos_t_[r] = k;
  } else if (leave_ref >= 0) {
    // Row of the entering activity leaves T, the structural leaves S.
    const int t = pos_s_[leave_ref];
    const int a = pos_t_[SlackRow(enter_ref)];
    const double piv = K(t, a);
    const double* prow = &kinv_[static_cast<size_t>(t) * ld_];
    for (int i = 0; i < k; ++i) {
      if (i == t) continue;
      const double f = K(i, a) / piv;
      if (f == 0.0) continue;
      double* row = &kinv_[static_cast<size_t>(i) * ld_];
      for (int b = 0; b < k; ++b) row[b] -= f * prow[b];
    }
    pos_s_[leave_ref] = -1;
    pos_t_[SlackRow(enter_ref)] = -1;
    RemoveKernel(t, a);
  } else {
    // Row replacement in K.
    const int r_in = SlackRow(enter_ref);
    const int r_out = SlackRow(leave_ref);
    const int a = pos_t_[r_in];
    std::vector<double> g(k, 0.0);
    for (const LinearTerm& e : rows_[r_out]) {
      const int i = pos_s_[e.index];
      if (i < 0) continue;
      const double* row = &kinv_[static_cast<size_t>(i) * ld_];
      for (int b = 0; b < k; ++b) g[b] += e.coef * row[b];
    }
    const double ga = g[a];
    g[a] -= 1.0;
    for (int i = 0; i < k; ++i) {
      const double f = K(i, a) / ga;
      if (f == 0.0) continue;
      double* row = &kinv_[static_cast<size_t>(i) * ld_];
      for (int b = 0; b < k; ++b) row[b] -= f * g[b];
    }
    pos_t_[r_in] = -1;
    tight_rows_[a] = r_out;
    pos_t_[r_out] = a;
  }
  SetStatus(enter_ref, kBasic);
  ++updates_;
}

LpStatus SimplexSolver::RunPrimal() {
  const double tol = opt_.feasibility_tol;
  const std::int64_t bland_threshold = 10LL * (m_ + n_);
  std::int64_t degenerate = 0;
  bool bland = false;
  int verify_rounds = 0;
  auto order = [&](int ref) { return ref >= 0 ? ref : n_ + SlackRow(ref); };

  while (true) {
    if (iterations_ >= opt_.max_iterations) return LpStatus::kNumericalFailure;
    if (updates_ >= opt_.refactor_interval) {
      if (!Refactor()) SlackBasis();
      ComputePrimal();
    }
    const bool phase1 = MaxPrimalInfeasibility() > tol;
    ComputeDuals(phase1);

    // Pricing.
    int enter = 0;
    int dir = 0;
    bool found = false;
    double best = opt_.optimality_tol;
    auto consider = [&](int ref, Status s, double lo, double up, double d) {
      if (s == kBasic || lo == up) return;
      int want = 0;
      if ((s == kLower || s == kZero) && d < -opt_.optimality_tol) want = 1;
      if ((s == kUpper || s == kZero) && d > opt_.optimality_tol) want = -1;
      if (want == 0) return;
      if (bland) {
        if (!found || order(ref) < order(enter)) {
          enter = ref;
          dir = want;
          found = true;
        }
      } else if (std::abs(d) > best) {
        best = std::abs(d);
        enter = ref;
        dir = want;
        found = true;
      }
    };
    for (int j = 0; j < n_; ++j) consider(j, st_[j], lb_[j], ub_[j], dj_[j]);
    for (int r = 0; r < m_; ++r) {
      consider(SlackRef(r), sst_[r], rlb_[r], rub_[r], ds_[r]);
    }

    if (!found) {
      if (!phase1) return LpStatus::kOptimal;
      // Confirm infeasibility on a fresh factorization.
      if (updates_ > 0 && verify_rounds < 3) {
        ++verify_rounds;
        if (!Refactor()) SlackBasis();
        ComputePrimal();
        continue;
      }
      return LpStatus::kInfeasible;
    }

    Ftran(enter);

    // Ratio test (Harris two-pass unless in Bland mode).
    const int k = kdim();
    auto basic_ref = [&](int idx) {
      return idx < k ? basic_cols_[idx] : SlackRef(idx - k);
    };
    auto delta = [&](int idx) {
      return -dir * (idx < k ? d_s_[idx] : d_f_[idx - k]);
    };
    const int total = k + m_;
    double harris = kInfinity;
    for (int idx = 0; idx < total; ++idx) {
      if (idx >= k && sst_[idx - k] != kBasic) continue;
      const double g = delta(idx);
      if (std::abs(g) <= opt_.pivot_tol) continue;
      const int ref = basic_ref(idx);
      const double v = Value(ref);
      const double lo = Lo(ref);
      const double up = Up(ref);
      double t = kInfinity;
      if (v < lo - tol) {
        if (g > 0) t = (lo - v + tol) / g;
      } else if (v > up + tol) {
        if (g < 0) t = (v - up + tol) / -g;
      } else if (g > 0) {
        if (std::isfinite(up)) t = (up - v + tol) / g;
      } else if (std::isfinite(lo)) {
        t = (v - lo + tol) / -g;
      }
      harris = std::min(harris, t);
    }
    int leave_idx = -1;
    double step = kInfinity;
    double leave_bound = 0.0;
    bool leave_at_lower = true;
    double best_g = 0.0;
    for (int idx = 0; idx < total; ++idx) {
      if (idx >= k && sst_[idx - k] != kBasic) continue;
      const double g = delta(idx);
      if (std::abs(g) <= opt_.pivot_tol) continue;
      const int ref = basic_ref(idx);
      const double v = Value(ref);
      const double lo = Lo(ref);
      const double up = Up(ref);
      double t = kInfinity;
      double bound = 0.0;
      bool at_lower = true;
      if (v < lo - tol) {
        if (g > 0) { t = (lo - v) / g; bound = lo; at_lower = true; }
      } else if (v > up + tol) {
        if (g < 0) { t = (v - up) / -g; bound = up; at_lower = false; }
      } else if (g > 0) {
        if (std::isfinite(up)) { t = (up - v) / g; bound = up; at_lower = false; }
      } else if (std::isfinite(lo)) {
        t = (v - lo) / -g;
        bound = lo;
        at_lower = true;
      }
      if (!std::isfinite(t)) continue;
      t = std::max(t, 0.0);
      bool take = false;
      if (bland) {
        take = leave_idx < 0 || t < step - 1e-12 ||
               (t <= step + 1e-12 && order(ref) < order(basic_ref(leave_idx)));
      } else if (t <= harris) {
        take = leave_idx < 0 || std::abs(g) > best_g;
      }
      if (take) {
        leave_idx = idx;
        step = t;
        leave_bound = bound;
        leave_at_lower = at_lower;
        best_g = std::abs(g);
      }
    }

    const double flip = Up(enter) - Lo(enter);
    if (leave_idx < 0 && !std::isfinite(flip)) {
      if (phase1) {
        if (!Refactor()) SlackBasis();
        ComputePrimal();
        if (++verify_rounds > 3) return LpStatus::kNumericalFailure;
        continue;
      }
      return LpStatus::kUnbounded;
    }
    ++iterations_;
    const bool do_flip = std::isfinite(flip) && (leave_idx < 0 || flip <= step);
    if (do_flip) step = flip;

    if (step <= 1e-12) {
      if (++degenerate > bland_threshold) bland = true;
    } else {
      degenerate = 0;
    }

    // Move along the edge.
    for (int i = 0; i < k; ++i) x_[basic_cols_[i]] -= dir * step * d_s_[i];
    for (int r = 0; r < m_; ++r) {
      if (sst_[r] == kBasic) s_[r] -= dir * step * d_f_[r];
    }
    if (enter >= 0) {
      x_[enter] += dir * step;
    } else {
      s_[SlackRow(enter)] += dir * step;
    }

    if (do_flip) {
      NonbasicAtBound(enter, dir > 0 ? kUpper : kLower);
      continue;
    }
    const int leave = basic_ref(leave_idx);
    Pivot(enter, leave);
    SetStatus(leave, leave_at_lower ? kLower : kUpper);
    if (leave >= 0) {
      x_[leave] = leave_bound;
    } else {
      s_[SlackRow(leave)] = leave_bound;
    }
  }
}

bool SimplexSolver::RunDual(LpStatus* result) {
  const double tol = opt_.feasibility_tol;
  const std::int64_t cap = iterations_ + 20LL * (m_ + n_) + 1000;
  int verify_rounds = 0;
  bool fresh_duals = false;
  std::vector<double> alpha(n_, 0.0);
  std::vector<char> marked(n_, 0);
  std::vector<int> touched;
  struct Cand {
    int ref;
    double alpha;
    double ratio;
  };
  std::vector<Cand> cands;
  while (true) {
    if (iterations_ >= cap || iterations_ >= opt_.max_iterations) return false;
    if (updates_ >= opt_.refactor_interval) {
      if (!Refactor()) {
        SlackBasis();
        ComputePrimal();
        return false;
      }
      ComputePrimal();
      fresh_duals = false;
    }
    if (!fresh_duals) {
      ComputeDuals(false);
      if (MaxDualInfeasibility() > 1e-7) return false;
      fresh_duals = true;
    }

    // Leaving variable: largest bound violation.
    const int k = kdim();
    int leave = 0;
    double worst = tol;
    bool found = false;
    for (int i = 0; i < k; ++i) {
      const double inf = Infeasibility(basic_cols_[i]);
      if (inf > worst) {
        worst = inf;
        leave = basic_cols_[i];
        found = true;
      }
    }
    for (int r = 0; r < m_; ++r) {
      if (sst_[r] != kBasic) continue;
      const double v = s_[r];
      const double inf = v < rlb_[r] ? rlb_[r] - v : v - rub_[r];
      if (inf > worst) {
        worst = inf;
        leave = SlackRef(r);
        found = true;
      }
    }
    if (!found) return true;

    const bool to_lower = Value(leave) < Lo(leave);
    BtranRow(leave);

    // Pivot row of the structurals, accumulated over the nonzeros of rho.
    for (int j : touched) {
      alpha[j] = 0.0;
      marked[j] = 0;
    }
    touched.clear();
    auto scatter_row = [&](int r) {
      const double rv = rho_[r];
      if (rv == 0.0) return;
      for (const LinearTerm& t : rows_[r]) {
        if (!marked[t.index]) {
          marked[t.index] = 1;
          touched.push_back(t.index);
        }
        alpha[t.index] += rv * t.coef;
      }
    };
    for (int a = 0; a < k; ++a) scatter_row(tight_rows_[a]);
    if (leave < 0 && pos_t_[SlackRow(leave)] < 0) scatter_row(SlackRow(leave));

    // Dual ratio test over nonbasic columns.
    cands.clear();
    auto consider = [&](int ref, Status s, double a, double d) {
      if (std::abs(a) <= opt_.pivot_tol) return;
      bool ok = false;
      if (s == kZero) {
        ok = true;
      } else if (to_lower) {
        ok = (s == kLower && a < 0) || (s == kUpper && a > 0);
      } else {
        ok = (s == kLower && a > 0) || (s == kUpper && a < 0);
      }
      if (!ok) return;
      const double mag = s == kZero ? std::abs(d)
                         : s == kLower ? std::max(d, 0.0)
                                       : std::max(-d, 0.0);
      cands.push_back({ref, a, mag / std::abs(a)});
    };
    for (int j : touched) {
      if (st_[j] == kBasic || lb_[j] == ub_[j]) continue;
      consider(j, st_[j], alpha[j], dj_[j]);
    }
    for (int r : rho_nz_) {
      if (rho_[r] == 0.0 || sst_[r] == kBasic || rlb_[r] == rub_[r]) continue;
      consider(SlackRef(r), sst_[r], -rho_[r], ds_[r]);
    }
    if (cands.empty()) {
      if (updates_ > 0 && verify_rounds < 2) {
        ++verify_rounds;
        if (!Refactor()) {
          SlackBasis();
          ComputePrimal();
          return false;
        }
        ComputePrimal();
        fresh_duals = false;
        continue;
      }
      *result = LpStatus::kInfeasible;
      status_ = LpStatus::kInfeasible;
      return true;
    }
    double harris = kInfinity;
    for (const Cand& c : cands) {
      harris = std::min(harris, c.ratio + opt_.optimality_tol / std::abs(c.alpha));
    }
    const Cand* pick = nullptr;
    for (const Cand& c : cands) {
      if (c.ratio <= harris &&
          (pick == nullptr || std::abs(c.alpha) > std::abs(pick->alpha))) {
        pick = &c;
      }
    }
    const int enter = pick->ref;
    const double alpha_q = pick->alpha;
    const double d_q = enter >= 0 ? dj_[enter] : ds_[SlackRow(enter)];
    Ftran(enter);
    const double dp = leave >= 0 ? d_s_[pos_s_[leave]] : d_f_[SlackRow(leave)];
    if (std::abs(dp - alpha_q) > 1e-6 * std::max(1.0, std::abs(dp)) ||
        std::abs(dp) <= opt_.pivot_tol) {
      if (updates_ == 0) return false;
      if (!Refactor()) {
        SlackBasis();
        ComputePrimal();
        return false;
      }
      ComputePrimal();
      fresh_duals = false;
      continue;
    }
    ++iterations_;
    const double target = to_lower ? Lo(leave) : Up(leave);
    const double step = (Value(leave) - target) / dp;
    for (int i = 0; i < k; ++i) x_[basic_cols_[i]] -= step * d_s_[i];
    for (int r : df_nz_) {
      if (sst_[r] == kBasic) s_[r] -= step * d_f_[r];
    }
    if (enter >= 0) {
      x_[enter] += step;
    } else {
      s_[SlackRow(enter)] += step;
    }
    Pivot(enter, leave);
    SetStatus(leave, to_lower ? kLower : kUpper);
    if (leave >= 0) {
      x_[leave] = target;
    } else {
      s_[SlackRow(leave)] = target;
    }
    // Dual update: y += theta * rho.
    const double theta = d_q / alpha_q;
    for (int j : touched) {
      dj_[j] = st_[j] == kBasic ? 0.0 : dj_[j] - theta * alpha[j];
    }
    for (int r : rho_nz_) {
      y_[r] += theta * rho_[r];
      ds_[r] = sst_[r] == kBasic ? 0.0 : y_[r];
    }
    if (enter < 0) ds_[SlackRow(enter)] = 0.0;
  }
}

LpStatus SimplexSolver::Solve() {
  if (rows_dirty_) BuildRows();
  if (!factored_ && !Refactor()) SlackBasis();
  ComputePrimal();
  LpStatus result = LpStatus::kNumericalFailure;
  for (int attempt = 0; attempt < 3; ++attempt) {
    if (MaxPrimalInfeasibility() > opt_.feasibility_tol) {
      ComputeDuals(false);
      if (MaxDualInfeasibility() <= 1e-7) {
        LpStatus dual_result = LpStatus::kNumericalFailure;
        if (RunDual(&dual_result) &&
            dual_result == LpStatus::kInfeasible) {
          status_ = LpStatus::kInfeasible;
          return status_;
        }
      }
    }
    result = RunPrimal();
    if (result != LpStatus::kOptimal) break;
    // Final check, on a fresh factorization when many updates accumulated.
    if (updates_ >= kVerifyRefactorUpdates && !Refactor()) {
      SlackBasis();
      ComputePrimal();
      continue;
    }
    ComputePrimal();
    if (MaxPrimalInfeasibility() > 1e-7) continue;
    ComputeDuals(false);
    if (MaxDualInfeasibility() > 1e-7) continue;
    break;
  }
  status_ = result;
  if (status_ == LpStatus::kOptimal) ComputeDuals(false);
  return status_;
}

double SimplexSolver::objective() const {
  double sum = 0.0;
  for (int j = 0; j < n_; ++j) sum += cost_[j] * x_[j];
  return sum;
}

std::vector<double> SimplexSolver::Duals() const { return y_; }

std::vector<double> SimplexSolver::ReducedCosts() const {
  std::vector<double> out(n_, 0.0);
  for (int j = 0; j < n_ && j < static_cast<int>(dj_.size()); ++j) {
    if (st_[j] != kBasic) out[j] = dj_[j];
  }
  return out;
}

LpSolution SimplexSolver::Solution() const {
  LpSolution sol;
  sol.status = status_;
  sol.iterations = iterations_;
  if (status_ == LpStatus::kOptimal) {
    sol.x = x_;
    sol.duals = Duals();
    sol.reduced_costs = ReducedCosts();
    sol.objective = objective();
  }
  return sol;
}

SimplexSolver::Basis SimplexSolver::GetBasis() const {
  Basis b(n_ + m_);
  for (int j = 0; j < n_; ++j) b[j] = st_[j];
  for (int r = 0; r < m_; ++r) b[n_ + r] = sst_[r];
  return b;
}

void SimplexSolver::SetBasis(const Basis& basis) {
  if (rows_dirty_) BuildRows();
  if (static_cast<int>(basis.size()) != n_ + m_) {
    SlackBasis();
    return;
  }
  basic_cols_.clear();
  tight_rows_.clear();
  for (int j = 0; j < n_; ++j) {
    st_[j] = static_cast<Status>(basis[j]);
    pos_s_[j] = -1;
    if (st_[j] == kBasic) {
      pos_s_[j] = static_cast<int>(basic_cols_.size());
      basic_cols_.push_back(j);
    } else {
      Status s = st_[j];
      if ((s == kLower && !std::isfinite(lb_[j])) ||
          (s == kUpper && !std::isfinite(ub_[j])) || s == kZero) {
        s = NearestBoundStatus(lb_[j], ub_[j], x_[j]);
      }
      NonbasicAtBound(j, s);
    }
  }
  for (int r = 0; r < m_; ++r) {
    sst_[r] = static_cast<Status>(basis[n_ + r]);
    pos_t_[r] = -1;
    if (sst_[r] != kBasic) {
      pos_t_[r] = static_cast<int>(tight_rows_.size());
      tight_rows_.push_back(r);
      Status s = sst_[r];
      if ((s == kLower && !std::isfinite(rlb_[r])) ||
          (s == kUpper && !std::isfinite(rub_[r])) || s == kZero) {
        s = NearestBoundStatus(rlb_[r], rub_[r], s_[r]);
      }
      NonbasicAtBound(SlackRef(r), s);
    }
  }
  if (!Refactor()) SlackBasis();
}

LpSolution SolveLp(const LpModel& model, const LpOptions& options) {
  SimplexSolver solver(model, options);
  solver.Solve();
  return solver.Solution();
}

}  // namespace lrud
