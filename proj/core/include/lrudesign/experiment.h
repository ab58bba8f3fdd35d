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

#ifndef LRUDESIGN_EXPERIMENT_H_
#define LRUDESIGN_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lrudesign/instance_gen.h"

namespace lrud {

// Cartesian grid of generator settings; every cell is run on the same seeds
// seed_base, seed_base + 1, ...
struct ExperimentGrid {
  std::vector<int> sizes = {10};
  std::vector<double> deltas = {2.0};
  std::vector<double> delta_es = {1.0};
  std::vector<double> qs = {1.0};
  std::vector<std::string> methods = {"colgen"};  // colgen|blp|oracle|clru
  std::uint64_t seed_base = 1;
  int num_seeds = 1;
  double blp_time_limit_seconds = 600.0;
  GeneratorConfig ranges;  // parameter ranges; size/density fields ignored

  static ExperimentGrid FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;
};

struct ExperimentRow {
  int n = 0;
  double delta = 0.0;
  double delta_e = 0.0;
  double q = 0.0;
  std::uint64_t seed = 0;
  std::string method;
  std::string status;  // ok | limit | error
  double objective = 0.0;
  int num_lrus = 0;
  std::int64_t iterations = 0;
  std::int64_t nodes = 0;
  double wall_ms = 0.0;
  std::optional<bool> cycle_free;
  std::optional<bool> totally_balanced;
  std::optional<bool> connected;
  std::optional<bool> integral;
  std::optional<double> beta;       // (blp - colgen) / colgen
  std::optional<double> delta_pi;   // (partition - cover) / cover
  std::string error;
};

// Runs one generated instance with one method.
ExperimentRow RunCell(const GeneratorConfig& config, const std::string& method,
                      double blp_time_limit_seconds);

// Rows ordered by (size, delta, delta_e, q, seed, method) with methods in
// grid order. Uses `workers` threads; 0 reads LRUD_WORKERS (default 1).
std::vector<ExperimentRow> RunExperiment(const ExperimentGrid& grid,
                                         int workers = 0);

// Column names, in output order.
const std::vector<std::string>& ExperimentColumns();
void WriteCsv(std::ostream& out, const std::vector<ExperimentRow>& rows,
              bool include_wall_time = true);
std::vector<ExperimentRow> ReadCsv(std::istream& in);

// Per (size, delta, delta_e, q, method): count, failures, means of objective,
// LRU count, iterations, nodes, wall time and beta; median of delta_pi.
void WriteSummary(std::ostream& out, const std::vector<ExperimentRow>& rows);

int WorkersFromEnvironment();

}  // namespace lrud

#endif  // LRUDESIGN_EXPERIMENT_H_
