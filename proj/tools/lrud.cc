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

// lrud: command-line front end for the lrudesign library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "lrudesign/blp.h"
#include "lrudesign/clru.h"
#include "lrudesign/colgen.h"
#include "lrudesign/common.h"
#include "lrudesign/cost_model.h"
#include "lrudesign/experiment.h"
#include "lrudesign/fixtures.h"
#include "lrudesign/instance_gen.h"
#include "lrudesign/instance_io.h"
#include "lrudesign/oracle.h"
#include "lrudesign/structure_checks.h"

namespace {

using nlohmann::json;
using namespace lrud;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitLimit = 3;

// Thrown when a solver stops on a limit; the partial report is still printed.
struct LimitHit {
  json report;
};

void Emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    SaveJson(out, j);
  }
}

json CertificateJson(const Certificate& c) {
  return {{"cycle_free", c.cycle_free},
          {"totally_balanced", c.totally_balanced},
          {"connected", c.connected},
          {"integral", c.integral}};
}

json DesignJson(const SystemInstance& inst, const LruDesign& d) {
  json lrus = json::array();
  for (const Lru& q : d.lrus) {
    lrus.push_back({{"members", SetToJson(inst, q.members)},
                    {"removal_set", EdgeSetToJson(inst, q.gamma)},
                    {"rate", q.rate},
                    {"purchase", q.purchase},
                    {"removal", q.removal},
                    {"omega", q.omega}});
  }
  return {{"objective", d.total}, {"num_lrus", d.lrus.size()}, {"lrus", lrus}};
}

json CoverJson(const SystemInstance& inst, const CoverDesign& d) {
  json lrus = json::array();
  for (const CoverLru& q : d.lrus) {
    lrus.push_back({{"failure", SetToJson(inst, q.failure)},
                    {"replacement", SetToJson(inst, q.replacement)},
                    {"omega", q.omega}});
  }
  return {{"objective", d.total}, {"num_lrus", d.lrus.size()}, {"lrus", lrus}};
}

json SolveColgen(const SystemInstance& inst, const SuccessorSets& h,
                 const std::string& pricing, bool certify, double time_limit) {
  ColgenOptions options;
  options.pricing =
      pricing == "milp" ? PricingMethod::kMilp : PricingMethod::kEnumeration;
  options.certify = certify;
  options.time_limit_seconds = time_limit;
  const ColgenResult r = SolveLruDesignColgen(inst, h, options);
  json j = r.design ? DesignJson(inst, *r.design)
                    : json{{"objective", r.master.objective}};
  j["method"] = "colgen";
  j["pricing"] = PricingMethodName(options.pricing);
  j["iterations"] = r.iterations;
  j["columns"] = r.columns;
  j["converged"] = r.converged;
  j["seconds"] = r.seconds;
  if (r.certificate) j["certificate"] = CertificateJson(*r.certificate);
  if (!r.converged) {
    json cols = json::array();
    for (size_t i = 0; i < r.master.columns.size(); ++i) {
      if (r.master.values[i] <= 1e-9) continue;
      cols.push_back({{"members", SetToJson(inst, r.master.columns[i])},
                      {"value", r.master.values[i]}});
    }
    j["fractional"] = cols;
    j["warning"] = r.warning;
    throw LimitHit{j};
  }
  return j;
}

json SolveBlpCommand(const SystemInstance& inst, const SuccessorSets& h,
                     bool fidelity, double time_limit) {
  BlpOptions enc_options;
  enc_options.symmetry_breaking = !fidelity;
  const BlpEncoding enc(inst, h, enc_options);
  BlpSolveOptions options;
  options.milp.time_limit_seconds = time_limit;
  const BlpResult r = SolveBlp(enc, inst, h, options);
  json j = r.design ? DesignJson(inst, *r.design) : json::object();
  j["method"] = "blp";
  j["symmetry_breaking"] = !fidelity;
  j["status"] = MilpStatusName(r.status);
  j["bound"] = r.bound;
  j["nodes"] = r.nodes;
  j["seconds"] = r.seconds;
  if (r.status == MilpStatus::kLimitReached) throw LimitHit{j};
  if (r.status != MilpStatus::kOptimal) {
    throw Error(ErrorCode::kNumericalFailure,
                "blp solve ended with status " +
                    std::string(MilpStatusName(r.status)));
  }
  return j;
}

// Accepts {"lrus":[{"members":[...], "value":x}, ...]} or a bare list of
// label lists.
FractionalSolution ReadDesign(const SystemInstance& inst, const json& j) {
  FractionalSolution x;
  const json& list = j.is_array() ? j : j.at("lrus");
  for (const json& item : list) {
    if (item.is_array()) {
      x.columns.push_back(SetFromJson(inst, item));
      x.values.push_back(1.0);
    } else {
      x.columns.push_back(SetFromJson(inst, item.at("members")));
      x.values.push_back(item.value("value", 1.0));
    }
  }
  return x;
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInstanceTooLarge:
      return kExitLimit;
    case ErrorCode::kNumericalFailure:
    case ErrorCode::kIntegralityViolation:
      return kExitFailure;
    default:
      return kExitValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LRU design solver"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();

  // gen
  GeneratorConfig gen_config;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--n", gen_config.num_vertices, "Number of parts")
      ->capture_default_str();
  gen->add_option("--delta", gen_config.avg_degree, "Average vertex degree")
      ->capture_default_str();
  gen->add_option("--delta-e", gen_config.avg_out_degree,
                  "Average out-degree in the precedence graph")
      ->capture_default_str();
  gen->add_option("--q", gen_config.edge_scale, "Edge weight factor")
      ->capture_default_str();
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  // solve
  std::string in_path, out_path, method = "colgen", pricing = "enumeration";
  bool certify = false, fidelity = false;
  double time_limit = kInfinity;
  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("--in", in_path, "Instance JSON")->required();
  solve->add_option("--out", out_path, "Design JSON (default stdout)");
  solve->add_option("--method", method, "colgen, blp or oracle")
      ->check(CLI::IsMember({"colgen", "blp", "oracle"}))
      ->capture_default_str();
  solve->add_option("--pricing", pricing, "Pricing for colgen")
      ->check(CLI::IsMember({"enumeration", "milp"}))
      ->capture_default_str();
  solve->add_flag("--certify", certify, "Attach structural certificate");
  solve->add_flag("--fidelity", fidelity,
                  "Plain BLP without symmetry breaking rows");
  solve->add_option("--time-limit", time_limit, "Seconds");
  solve->add_option("--seed", seed, "Random seed (solvers are deterministic)");

  // clru
  std::string clru_mode = "connected";
  int clru_cap = 0;
  auto* clru = app.add_subcommand("clru", "Solve the cover variant");
  clru->add_option("--in", in_path, "Instance JSON")->required();
  clru->add_option("--out", out_path, "Output path");
  clru->add_option("--mode", clru_mode, "connected, full or milp")
      ->check(CLI::IsMember({"connected", "full", "milp"}))
      ->capture_default_str();
  clru->add_option("--cap", clru_cap, "Size cap for exhaustive modes");
  clru->add_option("--seed", seed, "Random seed (unused)");

  // check
  std::string design_path;
  auto* check = app.add_subcommand("check", "Evaluate and certify a design");
  check->add_option("--in", in_path, "Instance JSON")->required();
  check->add_option("--design", design_path, "Design JSON")->required();
  check->add_option("--out", out_path, "Output path");
  check->add_option("--seed", seed, "Random seed (unused)");

  // fixture
  std::string fixture_name;
  auto* fixture = app.add_subcommand("fixture", "Print a bundled instance");
  fixture->add_option("name", fixture_name, "laptop or chain")->required();
  fixture->add_option("--out", out_path, "Output path");
  fixture->add_option("--seed", seed, "Random seed (unused)");

  // experiment
  std::string grid_path, csv_path;
  int workers = 0;
  bool seed_given = false;
  auto* experiment = app.add_subcommand("experiment", "Run a batch grid");
  experiment->add_option("--grid", grid_path, "Grid JSON")->required();
  experiment->add_option("--out", csv_path, "CSV path (default stdout)");
  experiment->add_option("--workers", workers,
                         "Worker threads (default LRUD_WORKERS or 1)");
  experiment->add_option("--seed", seed, "First seed (overrides the grid)")
      ->each([&](const std::string&) { seed_given = true; });

  // summarize
  auto* summarize = app.add_subcommand("summarize", "Aggregate a result CSV");
  summarize->add_option("--in", csv_path, "Result CSV")->required();
  summarize->add_option("--out", out_path, "Output CSV (default stdout)");
  summarize->add_option("--seed", seed, "Random seed (unused)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      gen_config.seed = seed;
      const SystemInstance inst = Generate(gen_config);
      Emit(InstanceToJson(inst, gen_config.ToJson()), gen_out);
    } else if (*solve) {
      const SystemInstance inst = LoadInstance(in_path);
      const SuccessorSets h(inst);
      json j;
      if (method == "colgen") {
        j = SolveColgen(inst, h, pricing, certify, time_limit);
      } else if (method == "blp") {
        j = SolveBlpCommand(inst, h, fidelity, time_limit);
      } else {
        j = DesignJson(inst, OracleOptimalDesign(inst, h));
        j["method"] = "oracle";
      }
      if (certify && method != "colgen") {
        const FractionalSolution x = ReadDesign(inst, j);
        j["certificate"] = CertificateJson(Certify(inst, x));
      }
      Emit(j, out_path);
    } else if (*clru) {
      const SystemInstance inst = LoadInstance(in_path);
      const SuccessorSets h(inst);
      ClruOptions options;
      options.mode = clru_mode == "milp"   ? ClruMode::kMilp
                     : clru_mode == "full" ? ClruMode::kFullPower
                                           : ClruMode::kConnected;
      options.cap = clru_cap;
      json j = CoverJson(inst, SolveClru(inst, h, options));
      j["mode"] = ClruModeName(options.mode);
      Emit(j, out_path);
    } else if (*check) {
      const SystemInstance inst = LoadInstance(in_path);
      const SuccessorSets h(inst);
      FractionalSolution x = ReadDesign(inst, ReadJsonFile(design_path));
      x.objective = LpmObjective(inst, h, x);
      json j;
      if (IsIntegral(x)) {
        std::vector<VertexSet> sets;
        for (size_t i = 0; i < x.columns.size(); ++i) {
          if (x.values[i] > 0.5) sets.push_back(x.columns[i]);
        }
        j = DesignJson(inst, DesignCost(inst, h, sets));
      } else {
        j = {{"objective", x.objective},
             {"max_coverage_deviation", MaxCoverageDeviation(x, inst.num_vertices())}};
      }
      j["certificate"] = CertificateJson(Certify(inst, x));
      Emit(j, out_path);
    } else if (*fixture) {
      const std::string_view text = FixtureJson(fixture_name);
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path);
        out << text;
      }
    } else if (*experiment) {
      ExperimentGrid grid = ExperimentGrid::FromJson(ReadJsonFile(grid_path));
      if (seed_given) grid.seed_base = seed;
      const std::vector<ExperimentRow> rows = RunExperiment(grid, workers);
      if (csv_path.empty()) {
        WriteCsv(std::cout, rows);
      } else {
        std::ofstream out(csv_path);
        WriteCsv(out, rows);
      }
    } else if (*summarize) {
      std::ifstream in(csv_path);
      if (!in) throw Error(ErrorCode::kParseError, "cannot open " + csv_path);
      const std::vector<ExperimentRow> rows = ReadCsv(in);
      if (out_path.empty()) {
        WriteSummary(std::cout, rows);
      } else {
        std::ofstream out(out_path);
        WriteSummary(out, rows);
      }
    }
  } catch (const LimitHit& limit) {
    Emit(limit.report, out_path);
    std::cerr << "lrud: limit reached\n";
    return kExitLimit;
  } catch (const Error& e) {
    std::cerr << "lrud: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "lrud: bad JSON: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "lrud: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
