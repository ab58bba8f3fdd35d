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

#include "lrudesign/colgen.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <utility>

#include "lrudesign/common.h"

namespace lrud {

std::pair<int, bool> ColumnPool::Add(const VertexSet& q, double omega) {
  auto [it, inserted] = index_.emplace(q, size());
  if (inserted) {
    columns_.push_back(q);
    omega_.push_back(omega);
  }
  return {it->second, inserted};
}

std::optional<int> ColumnPool::Find(const VertexSet& q) const {
  auto it = index_.find(q);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

RestrictedMaster::RestrictedMaster(const SystemInstance& inst,
                                   const SuccessorSets& h)
    : inst_(&inst), h_(&h) {
  for (int v = 0; v < inst.num_vertices(); ++v) {
    base_.AddRow(std::span<const LinearTerm>(), RowSense::kEqual, 1.0);
  }
  solver_ = std::make_unique<SimplexSolver>(base_);
  for (int v = 0; v < inst.num_vertices(); ++v) {
    AddColumn(MakeSet(inst.num_vertices(), {v}));
  }
}

RestrictedMaster::~RestrictedMaster() = default;

bool RestrictedMaster::AddColumn(const VertexSet& q) {
  if (pool_.Find(q)) return false;
  const double omega = LruCost(*inst_, *h_, q).omega;
  pool_.Add(q, omega);
  std::vector<LinearTerm> entries;
  for (auto v = q.find_first(); v != VertexSet::npos; v = q.find_next(v)) {
    entries.push_back({static_cast<int>(v), 1.0});
  }
  // No upper bound: x_Q <= 1 follows from the partition rows.
  solver_->AddColumn(0.0, kInfinity, omega, entries);
  return true;
}

FractionalSolution RestrictedMaster::Solve() {
  LpStatus st = solver_->Solve();
  if (st != LpStatus::kOptimal) {
    solver_->SetBasis({});
    st = solver_->Solve();
  }
  if (st != LpStatus::kOptimal) {
    throw Error(ErrorCode::kNumericalFailure,
                std::string("restricted master: ") +
                    std::string(LpStatusName(st)));
  }
  FractionalSolution out;
  out.columns = pool_.columns();
  out.values = solver_->primal();
  out.duals = solver_->Duals();
  out.objective = solver_->objective();
  return out;
}

FractionalSolution SolveRestrictedMaster(const SystemInstance& inst,
                                         const SuccessorSets& h,
                                         std::span<const VertexSet> pool) {
  RestrictedMaster master(inst, h);
  for (const VertexSet& q : pool) master.AddColumn(q);
  // Report in the caller's pool order.
  const FractionalSolution all = master.Solve();
  FractionalSolution out;
  out.duals = all.duals;
  out.objective = all.objective;
  std::vector<char> seen(all.columns.size(), 0);
  for (const VertexSet& q : pool) {
    const int i = *master.pool().Find(q);
    out.columns.push_back(q);
    out.values.push_back(seen[i] ? 0.0 : all.values[i]);
    seen[i] = 1;
  }
  for (size_t i = 0; i < all.columns.size(); ++i) {
    if (!seen[i]) {
      out.columns.push_back(all.columns[i]);
      out.values.push_back(all.values[i]);
    }
  }
  return out;
}

std::string_view PricingMethodName(PricingMethod method) {
  switch (method) {
    case PricingMethod::kEnumeration: return "enumeration";
    case PricingMethod::kMilp: return "milp";
    case PricingMethod::kExhaustive: return "exhaustive";
  }
  return "unknown";
}

namespace {

class ConnectedPricer {
 public:
  ConnectedPricer(const MaskCost& mc, std::span<const double> duals)
      : mc_(mc), r_(duals.begin(), duals.end()), n_(mc.num_vertices()) {
    full_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  }

  std::pair<std::uint64_t, double> Run() {
    for (int v = 0; v < n_; ++v) {
      Offer(std::uint64_t{1} << v, mc_.Omega(std::uint64_t{1} << v) - r_[v]);
    }
    for (int v = 0; v < n_; ++v) {
      const std::uint64_t bit = std::uint64_t{1} << v;
      const std::uint64_t below = bit - 1;
      Extend(bit, mc_.Neighbors(v) & ~below & full_, below, mc_.rate(v),
             mc_.cost(v), r_[v]);
    }
    return {best_mask_, best_};
  }

 private:
  void Offer(std::uint64_t s, double rc) {
    const double tol = 1e-12 * (1.0 + std::abs(best_));
    if (best_mask_ == 0 || rc < best_ - tol ||
        (rc <= best_ + tol && MaskCanonicalLess(s, best_mask_))) {
      best_ = rc;
      best_mask_ = s;
    }
  }

  // Vertices outside s reachable from s without entering `excl`.
  std::uint64_t Reach(std::uint64_t s, std::uint64_t excl) const {
    const std::uint64_t open = full_ & ~excl;
    std::uint64_t seen = s;
    std::uint64_t frontier = s;
    while (frontier != 0) {
      const int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const std::uint64_t fresh = mc_.Neighbors(v) & open & ~seen;
      seen |= fresh;
      frontier |= fresh;
    }
    return seen & ~s;
  }

  void Extend(std::uint64_t s, std::uint64_t ext, std::uint64_t excl,
              double rate, double cost, double dual) {
    if (s != (s & -s)) {
      Offer(s, rate * (mc_.RemovalWeight(s) + cost) - dual);
    }
    if (ext == 0) return;
    // Lower bound over every connected superset inside s + reach: edges
    // from s to vertices that can never join stay on the boundary.
    const std::uint64_t reach = Reach(s, excl);
    const double fixed = mc_.FixedRemovalWeight(s, full_ & ~(s | reach));
    double bound = rate * (fixed + cost) - dual;
    for (std::uint64_t c = reach; c != 0; c &= c - 1) {
      const int x = std::countr_zero(c);
      bound += std::min(
          0.0, mc_.rate(x) * (fixed + cost) + rate * mc_.cost(x) - r_[x]);
    }
    if (bound > best_ + 1e-9 * (1.0 + std::abs(best_))) return;

    std::uint64_t local_ext = ext;
    std::uint64_t local_excl = excl;
    while (local_ext != 0) {
      const int u = std::countr_zero(local_ext);
      const std::uint64_t bit = std::uint64_t{1} << u;
      local_ext &= ~bit;
      const std::uint64_t grown = s | bit;
      const std::uint64_t next_ext =
          local_ext | (mc_.Neighbors(u) & full_ & ~grown & ~local_excl);
      Extend(grown, next_ext, local_excl, rate + mc_.rate(u),
             cost + mc_.cost(u), dual + r_[u]);
      local_excl |= bit;
    }
  }

  const MaskCost& mc_;
  std::vector<double> r_;
  int n_;
  std::uint64_t full_ = 0;
  std::uint64_t best_mask_ = 0;
  double best_ = 0.0;
};

}  // namespace

PricingResult PriceEnumeration(const SystemInstance& inst,
                               const SuccessorSets& h,
                               std::span<const double> duals, int cap) {
  const int n = inst.num_vertices();
  if (n > cap || n > MaskCost::kMaxVertices) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "enumeration pricing supports at most " +
                    std::to_string(std::min(cap, MaskCost::kMaxVertices)) +
                    " vertices");
  }
  if (static_cast<int>(duals.size()) != n) {
    throw Error(ErrorCode::kInvalidArgument, "one dual per vertex expected");
  }
  const MaskCost mc(inst, h);
  ConnectedPricer pricer(mc, duals);
  const auto [mask, rc] = pricer.Run();
  PricingResult out;
  out.column = FromMask(n, mask);
  out.reduced_cost = rc;
  out.method = PricingMethod::kEnumeration;
  return out;
}

PricingMilp::PricingMilp(const SystemInstance& inst, const SuccessorSets& h,
                         std::span<const double> duals)
    : n_(inst.num_vertices()), m_(inst.num_edges()) {
  if (static_cast<int>(duals.size()) != n_) {
    throw Error(ErrorCode::kInvalidArgument, "one dual per vertex expected");
  }
  LpModel& lp = model_.lp;
  for (int v = 0; v < n_; ++v) {
    model_.AddBinary(-duals[v]);
    model_.priority.push_back(1);
  }
  for (int e = 0; e < m_; ++e) {
    model_.AddBinary(0.0);
    model_.priority.push_back(0);
  }
  for (int e = 0; e < m_; ++e) {
    for (int v = 0; v < n_; ++v) {
      model_.AddContinuous(0.0, kInfinity,
                           inst.vertex(v).rate * inst.edge(e).weight);
    }
  }
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      model_.AddContinuous(0.0, kInfinity,
                           inst.vertex(u).cost * inst.vertex(v).rate);
    }
  }
  for (int b = 0; b < m_; ++b) {
    const int u = inst.edge(b).u;
    const int v = inst.edge(b).v;
    const EdgeSet& hb = h[b];
    for (auto e = hb.find_first(); e != EdgeSet::npos; e = hb.find_next(e)) {
      const int ke = k(static_cast<int>(e));
      lp.AddRow({{gamma(u), 1.0}, {gamma(v), -1.0}, {ke, -1.0}},
                RowSense::kLessEqual, 0.0);
      lp.AddRow({{gamma(v), 1.0}, {gamma(u), -1.0}, {ke, -1.0}},
                RowSense::kLessEqual, 0.0);
    }
  }
  for (int e = 0; e < m_; ++e) {
    for (int v = 0; v < n_; ++v) {
      const int z = eta(e, v);
      lp.AddRow({{z, 1.0}, {k(e), -1.0}}, RowSense::kLessEqual, 0.0);
      lp.AddRow({{z, 1.0}, {gamma(v), -1.0}}, RowSense::kLessEqual, 0.0);
      lp.AddRow({{z, 1.0}, {k(e), -1.0}, {gamma(v), -1.0}},
                RowSense::kGreaterEqual, -1.0);
    }
  }
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      const int z = delta(u, v);
      lp.AddRow({{z, 1.0}, {gamma(u), -1.0}}, RowSense::kLessEqual, 0.0);
      lp.AddRow({{z, 1.0}, {gamma(v), -1.0}}, RowSense::kLessEqual, 0.0);
      lp.AddRow({{z, 1.0}, {gamma(u), -1.0}, {gamma(v), -1.0}},
                RowSense::kGreaterEqual, -1.0);
    }
  }
  // Excludes the empty set.
  std::vector<LinearTerm> all;
  for (int v = 0; v < n_; ++v) all.push_back({gamma(v), 1.0});
  lp.AddRow(all, RowSense::kGreaterEqual, 1.0);
}

VertexSet PricingMilp::Decode(std::span<const double> x) const {
  VertexSet q(n_);
  for (int v = 0; v < n_; ++v) {
    if (x[gamma(v)] > 0.5) q.set(v);
  }
  return q;
}

PricingResult PriceMilp(const SystemInstance& inst, const SuccessorSets& h,
                        std::span<const double> duals,
                        const MilpOptions& options) {
  const PricingMilp pm(inst, h, duals);
  const MilpSolution sol = SolveMilp(pm.model(), options);
  if (!sol.has_incumbent) {
    throw Error(ErrorCode::kNumericalFailure,
                std::string("pricing MILP: ") +
                    std::string(MilpStatusName(sol.status)));
  }
  PricingResult out;
  out.column = pm.Decode(sol.x);
  out.method = PricingMethod::kMilp;
  double dual_sum = 0.0;
  for (auto v = out.column.find_first(); v != VertexSet::npos;
       v = out.column.find_next(v)) {
    dual_sum += duals[v];
  }
  out.reduced_cost = LruCost(inst, h, out.column).omega - dual_sum;
  return out;
}

namespace {

ColgenResult SolveConnected(const SystemInstance& inst, const SuccessorSets& h,
                            const ColgenOptions& options,
                            std::chrono::steady_clock::time_point start) {
  ColgenResult out;
  RestrictedMaster master(inst, h);
  FractionalSolution x;
  while (true) {
    x = master.Solve();
    out.objective_trace.push_back(x.objective);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    if (out.iterations >= options.max_iterations ||
        elapsed >= options.time_limit_seconds) {
      out.warning = "stopped before pricing converged; point may be fractional";
      break;
    }
    ++out.iterations;
    const PricingResult price =
        options.pricing == PricingMethod::kEnumeration
            ? PriceEnumeration(inst, h, x.duals, options.enumeration_cap)
            : PriceMilp(inst, h, x.duals);
    out.last_reduced_cost = price.reduced_cost;
    const double eps = 1e-7 * (1.0 + std::abs(x.objective));
    if (price.reduced_cost >= -eps) {
      out.converged = true;
      break;
    }
    if (!master.AddColumn(price.column)) {
      out.converged = true;
      out.warning = "priced column already in the pool";
      break;
    }
  }
  out.master = std::move(x);
  out.columns = master.pool().size();
  return out;
}

void Finish(const SystemInstance& inst, const SuccessorSets& h,
            const ColgenOptions& options, ColgenResult& out) {
  const int n = inst.num_vertices();
  out.integral = IsIntegral(out.master, 1e-6) &&
                 MaxCoverageDeviation(out.master, n) <= 1e-6;
  if (out.converged && !out.integral) {
    throw Error(ErrorCode::kIntegralityViolation,
                "converged restricted master is fractional");
  }
  if (out.integral) {
    std::vector<VertexSet> blocks;
    for (size_t i = 0; i < out.master.columns.size(); ++i) {
      if (out.master.values[i] > 0.5) blocks.push_back(out.master.columns[i]);
    }
    out.design = DesignCost(inst, h, blocks);
  }
  if (options.certify) out.certificate = Certify(inst, out.master);
}

VertexSet Lift(const VertexSet& local, const std::vector<int>& map, int n) {
  VertexSet q(n);
  for (auto v = local.find_first(); v != VertexSet::npos;
       v = local.find_next(v)) {
    q.set(map[v]);
  }
  return q;
}

}  // namespace

ColgenResult SolveLruDesignColgen(const SystemInstance& inst,
                                  const SuccessorSets& h,
                                  const ColgenOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const int n = inst.num_vertices();
  std::vector<Component> parts = ConnectedComponents(inst);
  ColgenResult out;
  if (parts.size() <= 1) {
    out = SolveConnected(inst, h, options, start);
  } else {
    out.converged = true;
    out.master.duals.assign(n, 0.0);
    for (const Component& part : parts) {
      const SuccessorSets ph(part.instance);
      ColgenResult sub = SolveConnected(part.instance, ph, options, start);
      out.converged = out.converged && sub.converged;
      out.iterations += sub.iterations;
      out.columns += sub.columns;
      out.last_reduced_cost = std::min(out.last_reduced_cost,
                                       sub.last_reduced_cost);
      out.objective_trace.insert(out.objective_trace.end(),
                                 sub.objective_trace.begin(),
                                 sub.objective_trace.end());
      if (!sub.warning.empty()) out.warning = sub.warning;
      for (size_t i = 0; i < sub.master.columns.size(); ++i) {
        out.master.columns.push_back(
            Lift(sub.master.columns[i], part.vertex_map, n));
        out.master.values.push_back(sub.master.values[i]);
      }
      for (size_t v = 0; v < part.vertex_map.size(); ++v) {
        out.master.duals[part.vertex_map[v]] = sub.master.duals[v];
      }
      out.master.objective += sub.master.objective;
    }
  }
  Finish(inst, h, options, out);
  out.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

}  // namespace lrud
