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

#include <cstdlib>
#include <sstream>

#include "lrudesign/colgen.h"
#include "lrudesign/common.h"
#include "lrudesign/experiment.h"
#include "lrudesign/instance_gen.h"
#include "test_util.h"

namespace lrud {
namespace {

ExperimentGrid SmallGrid() {
  ExperimentGrid g;
  g.sizes = {5, 6};
  g.deltas = {2.0};
  g.delta_es = {1.0};
  g.qs = {1.0, 10.0};
  g.methods = {"colgen", "blp", "oracle", "clru"};
  g.seed_base = 5;
  g.num_seeds = 2;
  g.blp_time_limit_seconds = 60.0;
  return g;
}

std::string Csv(const std::vector<ExperimentRow>& rows, bool wall) {
  std::ostringstream out;
  WriteCsv(out, rows, wall);
  return out.str();
}

TEST(ExperimentGrid, JsonRoundTrip) {
  const ExperimentGrid g = SmallGrid();
  const ExperimentGrid back = ExperimentGrid::FromJson(g.ToJson());
  EXPECT_EQ(back.ToJson(), g.ToJson());
  EXPECT_EQ(back.sizes, g.sizes);
  EXPECT_EQ(back.methods, g.methods);
  EXPECT_EQ(back.num_seeds, 2);
}

TEST(ExperimentGrid, ScalarsAndErrors) {
  const ExperimentGrid g = ExperimentGrid::FromJson(
      nlohmann::json::parse(R"({"n": 8, "delta": 2.5, "q": [1, 3]})"));
  EXPECT_EQ(g.sizes, std::vector<int>{8});
  EXPECT_EQ(g.deltas, std::vector<double>{2.5});
  EXPECT_EQ(g.qs, (std::vector<double>{1.0, 3.0}));
  try {
    ExperimentGrid::FromJson(nlohmann::json::parse(R"({"methods": ["x"]})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  EXPECT_THROW(
      ExperimentGrid::FromJson(nlohmann::json::parse(R"({"n": "big"})")),
      Error);
}

TEST(Experiment, RowsOrderedAndConsistent) {
  const ExperimentGrid g = SmallGrid();
  const std::vector<ExperimentRow> rows = RunExperiment(g, 1);
  ASSERT_EQ(rows.size(), 2u * 2u * 2u * 4u);
  for (size_t i = 0; i < rows.size(); i += 4) {
    EXPECT_EQ(rows[i].method, "colgen");
    EXPECT_EQ(rows[i + 3].method, "clru");
    for (size_t j = i; j < i + 4; ++j) {
      EXPECT_EQ(rows[j].status, "ok") << rows[j].error;
      EXPECT_EQ(rows[j].seed, rows[i].seed);
    }
    const double pi = rows[i].objective;
    EXPECT_TRUE(testing::Near(rows[i + 1].objective, pi, 1e-6));
    EXPECT_TRUE(testing::Near(rows[i + 2].objective, pi, 1e-9));
    ASSERT_TRUE(rows[i + 1].beta.has_value());
    EXPECT_NEAR(*rows[i + 1].beta, 0.0, 1e-6);
    ASSERT_TRUE(rows[i + 3].delta_pi.has_value());
    EXPECT_GE(*rows[i + 3].delta_pi, -1e-12);
    EXPECT_TRUE(rows[i].cycle_free.value_or(false));
    EXPECT_TRUE(rows[i].integral.value_or(false));
  }
  EXPECT_EQ(rows.front().n, 5);
  EXPECT_EQ(rows.back().n, 6);
  EXPECT_EQ(rows.front().seed, 5u);
}

TEST(Experiment, ColgenCellMatchesDirectSolve) {
  GeneratorConfig c = testing::Config(9, 2.5, 1.0, 3.0, 12);
  const ExperimentRow row = RunCell(c, "colgen", 10.0);
  const SystemInstance inst = Generate(c);
  const SuccessorSets h(inst);
  const ColgenResult r = SolveLruDesignColgen(inst, h);
  EXPECT_DOUBLE_EQ(row.objective, r.design->total);
  EXPECT_EQ(row.num_lrus, static_cast<int>(r.design->lrus.size()));
}

TEST(Experiment, DeterministicAcrossWorkers) {
  const ExperimentGrid g = SmallGrid();
  const std::string a = Csv(RunExperiment(g, 1), false);
  const std::string b = Csv(RunExperiment(g, 4), false);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("wall_ms"), std::string::npos);
}

TEST(Experiment, CsvRoundTrip) {
  const std::vector<ExperimentRow> rows = RunExperiment(SmallGrid(), 2);
  const std::string csv = Csv(rows, true);
  std::istringstream in(csv);
  const std::vector<ExperimentRow> back = ReadCsv(in);
  ASSERT_EQ(back.size(), rows.size());
  EXPECT_EQ(Csv(back, true), csv);
  for (size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].beta.has_value(), rows[i].beta.has_value());
    EXPECT_EQ(back[i].cycle_free, rows[i].cycle_free);
  }
}

TEST(Experiment, ErrorRows) {
  ExperimentGrid g;
  g.sizes = {6, 14};
  g.deltas = {3.0};
  g.methods = {"oracle"};
  const std::vector<ExperimentRow> rows = RunExperiment(g, 1);
  ASSERT_EQ(rows.size(), 2u);
  // 18 edges do not fit on 6 vertices.
  EXPECT_EQ(rows[0].status, "error");
  EXPECT_NE(rows[0].error.find("InfeasibleConfig"), std::string::npos);
  EXPECT_EQ(rows[1].status, "error");
  EXPECT_NE(rows[1].error.find("InstanceTooLarge"), std::string::npos);
  const std::string csv = Csv(rows, false);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(Experiment, Summary) {
  const std::vector<ExperimentRow> rows = RunExperiment(SmallGrid(), 2);
  std::ostringstream out;
  WriteSummary(out, rows);
  const std::string s = out.str();
  // Header plus one line per (n, q, method).
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 1 + 2 * 2 * 4);
  EXPECT_NE(s.find("median_delta_pi"), std::string::npos);
  EXPECT_NE(s.find("mean_beta"), std::string::npos);
}

TEST(Experiment, WorkersFromEnvironment) {
  ::setenv("LRUD_WORKERS", "3", 1);
  EXPECT_EQ(WorkersFromEnvironment(), 3);
  ::unsetenv("LRUD_WORKERS");
  EXPECT_EQ(WorkersFromEnvironment(), 1);
}

}  // namespace
}  // namespace lrud
