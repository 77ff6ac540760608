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

#ifndef DKIBO_EXPERIMENT_HPP
#define DKIBO_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dkibo/bench.hpp"
#include "dkibo/csv.hpp"
#include "dkibo/optimizer.hpp"
#include "dkibo/regret.hpp"

namespace dkibo {

inline constexpr int kConfigSchemaVersion = 1;

/// Invalid experiment configuration; field() is the dotted path, e.g.
/// "experiments[2].regressor.kind".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// One optimizer setting applied to a list of benchmarks.
struct ExperimentSpec {
  std::string name;
  Variant variant = Variant::dkibo;
  std::vector<std::string> benchmarks;
  AcquisitionConfig acquisition{};
  RegressorSpec regressor = RegressorSpec::defaults(RegressorKind::random_forest);
  MeanMode mean_mode = MeanMode::zero;
  int trials = 50;
  int i_max = 100;
  int n_init = 5;
  std::uint64_t base_seed = 0;  // trial t runs with seed base_seed + t
  int gp_restarts = 5;
  MaximizerOptions maximizer{};
};

struct RunConfig {
  std::filesystem::path output_dir = "dkibo-out";
  int jobs = 0;  // 0: one per available core
  CmrMode cmr_mode = CmrMode::instantaneous;
  std::vector<ExperimentSpec> experiments;
};

/// Parses and validates a JSON experiment file. Throws ConfigError.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

/// DKIBO_OUTPUT_DIR replaces output_dir and DKIBO_JOBS replaces jobs.
/// Throws ConfigError for a malformed DKIBO_JOBS.
void apply_environment(RunConfig& config);

/// Campaign settings for one trial of spec on bench.
CampaignConfig trial_config(const ExperimentSpec& spec, const BenchmarkFn& bench, int trial);

/// Runs one trial on the negated benchmark and converts the result back to
/// the benchmark's minimization convention.
CampaignResult run_trial(const ExperimentSpec& spec, const BenchmarkFn& bench, int trial);

/// Result rows for one trial.
std::vector<TrajectoryRow> trial_rows(const ExperimentSpec& spec, const BenchmarkFn& bench,
                                      int trial, const CampaignResult& result, CmrMode mode);

struct TrialFailure {
  std::string experiment;
  std::string benchmark;
  int trial = 0;
  std::string message;
};

struct RunOutcome {
  std::vector<TrajectoryRow> rows;  // experiment, benchmark, trial order
  std::vector<TrialFailure> failures;
  std::size_t trials_total = 0;
  std::size_t trials_done = 0;
  bool complete() const { return failures.empty() && trials_done == trials_total; }
};

/// Runs every trial on a pool of config.jobs workers. Rows come back in
/// trial order whatever the completion order. progress, when set, is called
/// after each finished trial from a worker thread.
RunOutcome run_experiments(const RunConfig& config,
                           const std::function<void(std::size_t done, std::size_t total)>&
                               progress = {});

/// Writes trajectories.csv, the report tables and manifest.json.
void write_outputs(const RunConfig& config, const RunOutcome& outcome);

}  // namespace dkibo

#endif  // DKIBO_EXPERIMENT_HPP
