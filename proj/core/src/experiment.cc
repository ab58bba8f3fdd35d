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

#include "lrudesign/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "lrudesign/blp.h"
#include "lrudesign/clru.h"
#include "lrudesign/colgen.h"
#include "lrudesign/common.h"
#include "lrudesign/oracle.h"

namespace lrud {
namespace {

std::string FormatNumber(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

template <typename T>
std::vector<T> ReadList(const nlohmann::json& j, const char* key,
                        std::vector<T> fallback) {
  if (!j.contains(key)) return fallback;
  const nlohmann::json& v = j.at(key);
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

void ReadRange(const nlohmann::json& j, const char* key, double* lo,
               double* hi) {
  if (!j.contains(key)) return;
  const auto pair = j.at(key).get<std::vector<double>>();
  if (pair.size() != 2) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(key) + " needs two values");
  }
  *lo = pair[0];
  *hi = pair[1];
}

std::string Sanitize(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ' ';
  }
  return text;
}

double Elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

ExperimentGrid ExperimentGrid::FromJson(const nlohmann::json& j) {
  try {
    ExperimentGrid g;
    g.sizes = ReadList<int>(j, "n", g.sizes);
    g.deltas = ReadList<double>(j, "delta", g.deltas);
    g.delta_es = ReadList<double>(j, "delta_e", g.delta_es);
    g.qs = ReadList<double>(j, "q", g.qs);
    g.methods = ReadList<std::string>(j, "methods", g.methods);
    g.seed_base = j.value("seed", g.seed_base);
    g.num_seeds = j.value("seeds", g.num_seeds);
    g.blp_time_limit_seconds =
        j.value("blp_time_limit", g.blp_time_limit_seconds);
    ReadRange(j, "rate_range", &g.ranges.rate_min, &g.ranges.rate_max);
    ReadRange(j, "cost_range", &g.ranges.cost_min, &g.ranges.cost_max);
    ReadRange(j, "weight_range", &g.ranges.weight_min, &g.ranges.weight_max);
    for (const std::string& m : g.methods) {
      if (m != "colgen" && m != "blp" && m != "oracle" && m != "clru") {
        throw Error(ErrorCode::kInvalidArgument, "unknown method " + m);
      }
    }
    if (g.num_seeds < 0) {
      throw Error(ErrorCode::kInvalidArgument, "negative seed count");
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

nlohmann::json ExperimentGrid::ToJson() const {
  return {{"n", sizes},
          {"delta", deltas},
          {"delta_e", delta_es},
          {"q", qs},
          {"methods", methods},
          {"seed", seed_base},
          {"seeds", num_seeds},
          {"blp_time_limit", blp_time_limit_seconds},
          {"rate_range", {ranges.rate_min, ranges.rate_max}},
          {"cost_range", {ranges.cost_min, ranges.cost_max}},
          {"weight_range", {ranges.weight_min, ranges.weight_max}}};
}

ExperimentRow RunCell(const GeneratorConfig& config, const std::string& method,
                      double blp_time_limit_seconds) {
  ExperimentRow row;
  row.n = config.num_vertices;
  row.delta = config.avg_degree;
  row.delta_e = config.avg_out_degree;
  row.q = config.edge_scale;
  row.seed = config.seed;
  row.method = method;
  const auto start = std::chrono::steady_clock::now();
  try {
    const SystemInstance inst = Generate(config);
    const SuccessorSets h(inst);
    if (method == "colgen") {
      ColgenOptions options;
      options.certify = true;
      const ColgenResult r = SolveLruDesignColgen(inst, h, options);
      row.status = r.converged ? "ok" : "limit";
      row.objective = r.design ? r.design->total : r.master.objective;
      row.num_lrus = r.design ? static_cast<int>(r.design->lrus.size()) : 0;
      row.iterations = r.iterations;
      row.cycle_free = r.certificate->cycle_free;
      row.totally_balanced = r.certificate->totally_balanced;
      row.connected = r.certificate->connected;
      row.integral = r.certificate->integral;
    } else if (method == "blp") {
      const BlpEncoding enc(inst, h);
      BlpSolveOptions options;
      options.milp.time_limit_seconds = blp_time_limit_seconds;
      const BlpResult r = SolveBlp(enc, inst, h, options);
      row.status = r.status == MilpStatus::kOptimal ? "ok"
                   : r.status == MilpStatus::kLimitReached ? "limit"
                                                           : "error";
      if (r.design) {
        row.objective = r.design->total;
        row.num_lrus = static_cast<int>(r.design->lrus.size());
      }
      row.nodes = r.nodes;
    } else if (method == "oracle") {
      const LruDesign d = OracleOptimalDesign(inst, h);
      row.status = "ok";
      row.objective = d.total;
      row.num_lrus = static_cast<int>(d.lrus.size());
    } else if (method == "clru") {
      const CoverDesign cover = SolveClru(inst, h);
      const ColgenResult part = SolveLruDesignColgen(inst, h);
      row.status = "ok";
      row.objective = cover.total;
      row.num_lrus = static_cast<int>(cover.lrus.size());
      row.delta_pi = (part.design->total - cover.total) / cover.total;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown method " + method);
    }
  } catch (const std::exception& e) {
    row.status = "error";
    row.error = Sanitize(e.what());
  }
  row.wall_ms = Elapsed(start);
  return row;
}

int WorkersFromEnvironment() {
  const char* env = std::getenv("LRUD_WORKERS");
  if (env == nullptr) return 1;
  const int w = std::atoi(env);
  return w > 0 ? w : 1;
}

std::vector<ExperimentRow> RunExperiment(const ExperimentGrid& grid,
                                         int workers) {
  struct Job {
    GeneratorConfig config;
    std::string method;
  };
  std::vector<Job> jobs;
  for (int n : grid.sizes) {
    for (double delta : grid.deltas) {
      for (double delta_e : grid.delta_es) {
        for (double q : grid.qs) {
          for (int s = 0; s < grid.num_seeds; ++s) {
            GeneratorConfig c = grid.ranges;
            c.num_vertices = n;
            c.avg_degree = delta;
            c.avg_out_degree = delta_e;
            c.edge_scale = q;
            c.seed = grid.seed_base + static_cast<std::uint64_t>(s);
            for (const std::string& m : grid.methods) jobs.push_back({c, m});
          }
        }
      }
    }
  }
  std::vector<ExperimentRow> rows(jobs.size());
  if (workers <= 0) workers = WorkersFromEnvironment();
  workers = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      rows[i] = RunCell(jobs[i].config, jobs[i].method,
                        grid.blp_time_limit_seconds);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  // Objective gap of blp against colgen on the same instance.
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].method != "blp" || rows[i].status == "error" ||
        rows[i].num_lrus == 0) {
      continue;
    }
    for (size_t j = 0; j < rows.size(); ++j) {
      const ExperimentRow& c = rows[j];
      if (c.method == "colgen" && c.status == "ok" && c.n == rows[i].n &&
          c.delta == rows[i].delta && c.delta_e == rows[i].delta_e &&
          c.q == rows[i].q && c.seed == rows[i].seed) {
        rows[i].beta = (rows[i].objective - c.objective) / c.objective;
        break;
      }
    }
  }
  return rows;
}

const std::vector<std::string>& ExperimentColumns() {
  static const std::vector<std::string> kColumns = {
      "n",         "delta",      "delta_e",   "q",
      "seed",      "method",     "status",    "objective",
      "num_lrus",  "iterations", "nodes",     "wall_ms",
      "cycle_free", "totally_balanced", "connected", "integral",
      "beta",      "delta_pi",   "error"};
  return kColumns;
}

void WriteCsv(std::ostream& out, const std::vector<ExperimentRow>& rows,
              bool include_wall_time) {
  auto flag = [](const std::optional<bool>& b) -> std::string {
    if (!b) return "";
    return *b ? "1" : "0";
  };
  auto opt = [](const std::optional<double>& v) -> std::string {
    return v ? FormatNumber(*v) : "";
  };
  const std::vector<std::string>& cols = ExperimentColumns();
  for (size_t c = 0; c < cols.size(); ++c) {
    if (!include_wall_time && cols[c] == "wall_ms") continue;
    out << (c == 0 ? "" : ",") << cols[c];
  }
  out << '\n';
  for (const ExperimentRow& r : rows) {
    out << r.n << ',' << FormatNumber(r.delta) << ','
        << FormatNumber(r.delta_e) << ',' << FormatNumber(r.q) << ','
        << r.seed << ',' << r.method << ',' << r.status << ','
        << FormatNumber(r.objective) << ',' << r.num_lrus << ','
        << r.iterations << ',' << r.nodes << ',';
    if (include_wall_time) out << FormatNumber(r.wall_ms) << ',';
    out << flag(r.cycle_free) << ',' << flag(r.totally_balanced) << ','
        << flag(r.connected) << ',' << flag(r.integral) << ','
        << opt(r.beta) << ',' << opt(r.delta_pi) << ',' << r.error << '\n';
  }
}

std::vector<ExperimentRow> ReadCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kParseError, "empty CSV");
  }
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  std::map<std::string, int> col;
  for (size_t i = 0; i < header.size(); ++i) col[header[i]] = static_cast<int>(i);
  for (const char* need : {"n", "delta", "delta_e", "q", "seed", "method",
                           "status", "objective"}) {
    if (!col.count(need)) {
      throw Error(ErrorCode::kParseError,
                  std::string("CSV lacks column ") + need);
    }
  }
  std::vector<ExperimentRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    size_t pos = 0;
    while (true) {
      const size_t comma = line.find(',', pos);
      cells.push_back(line.substr(pos, comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::kParseError, "ragged CSV row: " + line);
    }
    auto get = [&](const char* name) -> std::string {
      auto it = col.find(name);
      return it == col.end() ? std::string() : cells[it->second];
    };
    auto num = [&](const char* name) {
      const std::string v = get(name);
      return v.empty() ? 0.0 : std::stod(v);
    };
    auto flag = [&](const char* name) -> std::optional<bool> {
      const std::string v = get(name);
      if (v.empty()) return std::nullopt;
      return v == "1";
    };
    auto opt = [&](const char* name) -> std::optional<double> {
      const std::string v = get(name);
      if (v.empty()) return std::nullopt;
      return std::stod(v);
    };
    try {
      ExperimentRow r;
      r.n = static_cast<int>(num("n"));
      r.delta = num("delta");
      r.delta_e = num("delta_e");
      r.q = num("q");
      r.seed = std::stoull(get("seed"));
      r.method = get("method");
      r.status = get("status");
      r.objective = num("objective");
      r.num_lrus = static_cast<int>(num("num_lrus"));
      r.iterations = static_cast<std::int64_t>(num("iterations"));
      r.nodes = static_cast<std::int64_t>(num("nodes"));
      r.wall_ms = num("wall_ms");
      r.cycle_free = flag("cycle_free");
      r.totally_balanced = flag("totally_balanced");
      r.connected = flag("connected");
      r.integral = flag("integral");
      r.beta = opt("beta");
      r.delta_pi = opt("delta_pi");
      r.error = get("error");
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParseError, "bad number in CSV row: " + line);
    }
  }
  return rows;
}

void WriteSummary(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  using Key = std::tuple<int, double, double, double, std::string>;
  struct Acc {
    int count = 0;
    int failures = 0;
    int ok = 0;
    double objective = 0.0;
    double lrus = 0.0;
    double iterations = 0.0;
    double nodes = 0.0;
    double wall = 0.0;
    double beta = 0.0;
    int beta_count = 0;
    std::vector<double> delta_pi;
  };
  std::map<Key, Acc> groups;
  for (const ExperimentRow& r : rows) {
    Acc& a = groups[{r.n, r.delta, r.delta_e, r.q, r.method}];
    ++a.count;
    if (r.status != "ok") {
      ++a.failures;
      continue;
    }
    ++a.ok;
    a.objective += r.objective;
    a.lrus += r.num_lrus;
    a.iterations += static_cast<double>(r.iterations);
    a.nodes += static_cast<double>(r.nodes);
    a.wall += r.wall_ms;
    if (r.beta) {
      a.beta += *r.beta;
      ++a.beta_count;
    }
    if (r.delta_pi) a.delta_pi.push_back(*r.delta_pi);
  }
  out << "n,delta,delta_e,q,method,count,failures,mean_objective,"
         "mean_num_lrus,mean_iterations,mean_nodes,mean_wall_ms,mean_beta,"
         "median_delta_pi\n";
  for (auto& [key, a] : groups) {
    const auto& [n, delta, delta_e, q, method] = key;
    const double d = a.ok > 0 ? a.ok : 1.0;
    std::string median;
    if (!a.delta_pi.empty()) {
      std::sort(a.delta_pi.begin(), a.delta_pi.end());
      const size_t k = a.delta_pi.size();
      median = FormatNumber(k % 2 == 1 ? a.delta_pi[k / 2]
                                       : 0.5 * (a.delta_pi[k / 2 - 1] +
                                                a.delta_pi[k / 2]));
    }
    out << n << ',' << FormatNumber(delta) << ',' << FormatNumber(delta_e)
        << ',' << FormatNumber(q) << ',' << method << ',' << a.count << ','
        << a.failures << ',' << FormatNumber(a.objective / d) << ','
        << FormatNumber(a.lrus / d) << ',' << FormatNumber(a.iterations / d)
        << ',' << FormatNumber(a.nodes / d) << ','
        << FormatNumber(a.wall / d) << ','
        << (a.beta_count > 0 ? FormatNumber(a.beta / a.beta_count) : "")
        << ',' << median << '\n';
  }
}

}  // namespace lrud
