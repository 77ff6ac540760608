// Copyright 2026 The dkibo Authors. All Rights Reserved.
//
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
// =============================================================================

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "dkibo/experiment.hpp"

namespace dkibo {
namespace {

std::string field_of(std::string_view text) {
  try {
    parse_run_config(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

TEST(RunConfig, DefaultsMergeIntoExperiments) {
  const auto c = parse_run_config(R"({
    "schema_version": 1,
    "output_dir": "out",
    "jobs": 2,
    "defaults": {"trials": 3, "i_max": 7, "benchmark": "branin", "acquisition": "ei"},
    "experiments": [
      {"variant": "dkibo", "regressor": "gradient_boosting"},
      {"variant": "sbo", "benchmarks": "synthetic", "trials": 4},
      {"variant": "rs", "base_seed": 100, "kappa": 1.5}
    ]})");
  EXPECT_EQ(c.output_dir, "out");
  EXPECT_EQ(c.jobs, 2);
  EXPECT_EQ(c.cmr_mode, CmrMode::instantaneous);
  ASSERT_EQ(c.experiments.size(), 3u);
  const auto& a = c.experiments[0];
  EXPECT_EQ(a.variant, Variant::dkibo);
  EXPECT_EQ(a.benchmarks, std::vector<std::string>{"branin"});
  EXPECT_EQ(a.trials, 3);
  EXPECT_EQ(a.i_max, 7);
  EXPECT_EQ(a.acquisition.kind, AcquisitionKind::ei);
  EXPECT_EQ(a.regressor.kind, RegressorKind::gradient_boosting);
  EXPECT_EQ(a.regressor.max_depth, 3);
  EXPECT_EQ(c.experiments[1].benchmarks, synthetic_suite());
  EXPECT_EQ(c.experiments[1].trials, 4);
  EXPECT_EQ(c.experiments[2].variant, Variant::random_search);
  EXPECT_EQ(c.experiments[2].base_seed, 100u);
  EXPECT_DOUBLE_EQ(c.experiments[2].acquisition.kappa, 1.5);
}

TEST(RunConfig, FieldErrorsNameTheField) {
  EXPECT_EQ(field_of("{"), "<root>");
  EXPECT_EQ(field_of(R"({"schema_version": 2, "experiments": [{"benchmark": "branin"}]})"),
            "schema_version");
  EXPECT_EQ(field_of(R"({"schema_version": 1})"), "experiments");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "experiments": []})"), "experiments");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "colour": 1,
                         "experiments": [{"benchmark": "branin"}]})"),
            "colour");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "experiments": [
                         {"benchmark": "branin"}, {"benchmark": "branin", "trials": 0}]})"),
            "experiments[1].trials");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "experiments": [
                         {"benchmark": "branin", "variant": "tpe"}]})"),
            "experiments[0].variant");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "experiments": [{"benchmark": "sphere"}]})"),
            "experiments[0].benchmark");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "experiments": [
                         {"benchmark": "branin", "regressor": {"kind": "svm"}}]})"),
            "experiments[0].regressor.kind");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "experiments": [
                         {"benchmark": "branin", "benchmarks": ["ackley"]}]})"),
            "experiments[0].benchmarks");
  EXPECT_EQ(field_of(R"({"schema_version": 1, "jobs": -1,
                         "experiments": [{"benchmark": "branin"}]})"),
            "jobs");
}

TEST(RunConfig, EnvironmentOverridesOutputAndJobs) {
  RunConfig c;
  c.output_dir = "from-config";
  c.jobs = 1;
  ::setenv("DKIBO_OUTPUT_DIR", "from-env", 1);
  ::setenv("DKIBO_JOBS", "6", 1);
  apply_environment(c);
  EXPECT_EQ(c.output_dir, "from-env");
  EXPECT_EQ(c.jobs, 6);
  ::setenv("DKIBO_JOBS", "six", 1);
  EXPECT_THROW(apply_environment(c), ConfigError);
  ::unsetenv("DKIBO_OUTPUT_DIR");
  ::unsetenv("DKIBO_JOBS");
}

ExperimentSpec tiny(Variant variant, int trials, int i_max) {
  ExperimentSpec s;
  s.name = std::string(to_string(variant));
  s.variant = variant;
  s.benchmarks = {"branin", "six_hump_camel"};
  s.trials = trials;
  s.i_max = i_max;
  s.acquisition.i_max = std::max(1, i_max);
  s.base_seed = 40;
  s.gp_restarts = 2;
  s.maximizer.candidates = 200;
  s.maximizer.refine_starts = 2;
  s.maximizer.refine_evaluations = 30;
  return s;
}

TEST(Experiment, TrialSeedsFollowBaseSeed) {
  const auto spec = tiny(Variant::dkibo, 3, 2);
  const auto& bench = find_benchmark("branin");
  for (int t = 0; t < 3; ++t) EXPECT_EQ(trial_config(spec, bench, t).seed, 40u + t);
  EXPECT_EQ(trial_config(spec, bench, 0).space, bench.space);
}

TEST(Experiment, ZeroIterationsGiveInitialRowsOnly) {
  RunConfig c;
  c.jobs = 1;
  c.experiments = {tiny(Variant::dkibo, 1, 0)};
  const auto out = run_experiments(c);
  EXPECT_TRUE(out.complete());
  ASSERT_EQ(out.rows.size(), 2u * 5u);
  for (const auto& r : out.rows) {
    EXPECT_EQ(r.iteration, 0);
    EXPECT_FALSE(r.gamma.has_value());
  }
}

TEST(Experiment, RowsUseMinimizationUnits) {
  RunConfig c;
  c.jobs = 1;
  c.experiments = {tiny(Variant::sbo, 1, 2)};
  const auto out = run_experiments(c);
  const auto& bench = find_benchmark("branin");
  for (const auto& r : out.rows) {
    if (r.benchmark != "branin") continue;
    Vector x(2);
    x << r.x[0], r.x[1];
    EXPECT_EQ(r.y, bench.evaluate(x));
    EXPECT_NEAR(r.simple_regret, r.best_y - bench.f_min, 1e-12);
    EXPECT_EQ(r.regressor, "none");
  }
}

std::map<std::string, std::string> read_dir(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    out[e.path().filename().string()] = s.str();
  }
  return out;
}

TEST(Experiment, OutputsAreByteIdenticalAcrossRunsAndJobCounts) {
  const auto root = std::filesystem::temp_directory_path() / "dkibo-experiment-test";
  std::filesystem::remove_all(root);
  RunConfig c;
  c.experiments = {tiny(Variant::dkibo, 2, 3), tiny(Variant::random_search, 2, 3)};
  std::vector<std::map<std::string, std::string>> runs;
  for (int jobs : {1, 3}) {
    c.jobs = jobs;
    c.output_dir = root / ("jobs" + std::to_string(jobs));
    const auto out = run_experiments(c);
    EXPECT_TRUE(out.complete());
    EXPECT_EQ(out.trials_total, 8u);
    write_outputs(c, out);
    runs.push_back(read_dir(c.output_dir));
  }
  EXPECT_EQ(runs[0].size(), 6u);
  EXPECT_EQ(runs[0], runs[1]);
  EXPECT_EQ(runs[0]["trajectories.csv"].rfind(kTrajectorySchema, 0), 0u);
  std::filesystem::remove_all(root);
}

}  // namespace
}  // namespace dkibo
