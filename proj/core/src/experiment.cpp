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

#include "dkibo/experiment.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <spdlog/spdlog.h>

#include "dkibo/report.hpp"
#include "json_io.hpp"

namespace dkibo {

namespace {

using detail::FieldError;
using detail::Json;
using detail::ObjectReader;

const std::initializer_list<const char*> kExperimentKeys = {
    "name",     "variant",     "benchmark",  "benchmarks", "acquisition", "kappa",
    "xi_offset", "epsilon",    "schedule",   "regressor",  "mean_mode",   "trials",
    "i_max",    "n_init",      "base_seed",  "gp_restarts", "maximizer"};

std::vector<std::string> read_benchmarks(const ObjectReader& r) {
  std::vector<std::string> names;
  if (r.has("benchmark") && r.has("benchmarks"))
    throw FieldError(r.child("benchmarks"), "give either benchmark or benchmarks, not both");
  if (r.has("benchmark")) {
    names.push_back(r.string("benchmark"));
  } else {
    const Json& list = r.at("benchmarks");
    if (list.is_string() && list.get<std::string>() == "synthetic") return synthetic_suite();
    if (!list.is_array() || list.empty())
      throw FieldError(r.child("benchmarks"), "expected a non-empty array or \"synthetic\"");
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (!list[k].is_string())
        throw FieldError(r.child("benchmarks") + "[" + std::to_string(k) + "]", "expected a name");
      names.push_back(list[k].get<std::string>());
    }
  }
  for (std::size_t k = 0; k < names.size(); ++k) {
    try {
      find_benchmark(names[k]);
    } catch (const std::invalid_argument&) {
      throw FieldError(r.has("benchmark") ? r.child("benchmark")
                                          : r.child("benchmarks") + "[" + std::to_string(k) + "]",
                       "unknown benchmark '" + names[k] + "'");
    }
  }
  return names;
}

ExperimentSpec read_experiment(const Json& j, const std::string& path, std::size_t index) {
  ObjectReader r(j, path);
  r.only(kExperimentKeys);
  ExperimentSpec spec;
  const std::string variant = r.string("variant", "dkibo");
  const auto v = parse_variant(variant);
  if (!v) throw FieldError(r.child("variant"), "unknown variant '" + variant + "'");
  spec.variant = *v;
  spec.name = r.string("name", variant + "-" + std::to_string(index));
  spec.benchmarks = read_benchmarks(r);
  detail::read_acquisition(r, spec.acquisition);
  if (r.has("regressor")) spec.regressor = detail::read_regressor(r.at("regressor"), r.child("regressor"));
  if (r.has("mean_mode")) {
    const std::string mean = r.string("mean_mode");
    const auto m = parse_mean_mode(mean);
    if (!m) throw FieldError(r.child("mean_mode"), "unknown mean mode '" + mean + "'");
    spec.mean_mode = *m;
  }
  spec.trials = r.integer("trials", spec.trials);
  spec.i_max = r.integer("i_max", spec.i_max);
  spec.n_init = r.integer("n_init", spec.n_init);
  spec.base_seed = r.unsigned_integer("base_seed", spec.base_seed);
  spec.gp_restarts = r.integer("gp_restarts", spec.gp_restarts);
  if (r.has("maximizer")) detail::read_maximizer(r.at("maximizer"), r.child("maximizer"), spec.maximizer);

  if (spec.trials < 1) throw FieldError(r.child("trials"), "must be >= 1");
  if (spec.i_max < 0) throw FieldError(r.child("i_max"), "must be >= 0");
  if (spec.n_init < 2) throw FieldError(r.child("n_init"), "must be >= 2");
  if (spec.gp_restarts < 1) throw FieldError(r.child("gp_restarts"), "must be >= 1");
  AcquisitionConfig acq = spec.acquisition;
  acq.i_max = std::max(1, spec.i_max);
  try {
    acq.validate();
  } catch (const std::invalid_argument& e) {
    throw FieldError(path, e.what());
  }
  return spec;
}

RunConfig read_config(const Json& root) {
  ObjectReader r(root, "");
  r.only({"schema_version", "output_dir", "jobs", "cmr_mode", "defaults", "experiments"});
  const int version = r.integer("schema_version");
  if (version != kConfigSchemaVersion)
    throw FieldError("schema_version", "unsupported version " + std::to_string(version) +
                                           ", expected " + std::to_string(kConfigSchemaVersion));
  RunConfig config;
  config.output_dir = r.string("output_dir", config.output_dir.string());
  config.jobs = r.integer("jobs", 0);
  if (config.jobs < 0) throw FieldError("jobs", "must be >= 0");
  const std::string cmr = r.string("cmr_mode", "instantaneous");
  const auto mode = parse_cmr_mode(cmr);
  if (!mode) throw FieldError("cmr_mode", "expected instantaneous or running_simple");
  config.cmr_mode = *mode;

  Json defaults = Json::object();
  if (r.has("defaults")) {
    ObjectReader d(r.at("defaults"), "defaults");
    d.only(kExperimentKeys);
    defaults = r.at("defaults");
  }
  const Json& list = r.at("experiments");
  if (!list.is_array() || list.empty())
    throw FieldError("experiments", "expected a non-empty array");
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string path = "experiments[" + std::to_string(k) + "]";
    if (!list[k].is_object()) throw FieldError(path, "expected an object");
    Json merged = defaults;
    if (list[k].contains("benchmark") || list[k].contains("benchmarks")) {
      merged.erase("benchmark");
      merged.erase("benchmarks");
    }
    for (const auto& [key, value] : list[k].items()) merged[key] = value;
    config.experiments.push_back(read_experiment(merged, path, k));
  }
  return config;
}

std::string manifest_text(const RunOutcome& outcome, const std::vector<std::string>& files) {
  Json failures = Json::array();
  for (const auto& f : outcome.failures)
    failures.push_back(Json{{"experiment", f.experiment},
                            {"benchmark", f.benchmark},
                            {"trial", f.trial},
                            {"message", f.message}});
  Json root{{"schema", "dkibo-manifest"},
            {"version", 1},
            {"complete", outcome.complete()},
            {"trials_total", outcome.trials_total},
            {"trials_done", outcome.trials_done},
            {"failures", std::move(failures)},
            {"files", files}};
  return root.dump(2) + "\n";
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("<root>", std::string("not valid JSON: ") + e.what());
  }
  try {
    return read_config(root);
  } catch (const FieldError& e) {
    throw ConfigError(e.path(), std::string(e.what()).substr(e.path().size() + 2));
  }
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("<file>", "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_run_config(os.str());
}

void apply_environment(RunConfig& config) {
  if (const char* dir = std::getenv("DKIBO_OUTPUT_DIR"); dir && *dir) config.output_dir = dir;
  if (const char* jobs = std::getenv("DKIBO_JOBS"); jobs && *jobs) {
    char* end = nullptr;
    const long n = std::strtol(jobs, &end, 10);
    if (*end != '\0' || n < 0 || n > 4096)
      throw ConfigError("DKIBO_JOBS", "expected a non-negative integer");
    config.jobs = static_cast<int>(n);
  }
}

CampaignConfig trial_config(const ExperimentSpec& spec, const BenchmarkFn& bench, int trial) {
  CampaignConfig c{bench.space};
  c.variant = spec.variant;
  c.acquisition = spec.acquisition;
  c.acquisition.i_max = std::max(1, spec.i_max);
  c.regressor = spec.regressor;
  c.mean_mode = spec.mean_mode;
  c.n_init = spec.n_init;
  c.i_max = spec.i_max;
  c.seed = spec.base_seed + static_cast<std::uint64_t>(trial);
  c.gp_restarts = spec.gp_restarts;
  c.maximizer = spec.maximizer;
  return c;
}

CampaignResult run_trial(const ExperimentSpec& spec, const BenchmarkFn& bench, int trial) {
  const CampaignConfig config = trial_config(spec, bench, trial);
  const Objective objective = [&bench](const Vector& x) { return -bench.evaluate(x); };
  if (spec.variant == Variant::random_search) return run_random_search(config, objective);
  return run_campaign(config, objective);
}

std::vector<TrajectoryRow> trial_rows(const ExperimentSpec& spec, const BenchmarkFn& bench,
                                      int trial, const CampaignResult& result, CmrMode mode) {
  std::vector<double> f;
  f.reserve(result.trajectory.size());
  for (const auto& p : result.trajectory) f.push_back(-p.y);
  const auto simple = simple_regret_series(f, bench.f_min);
  const auto cmr = cumulative_mean_regret_series(f, bench.f_min, mode);

  const bool corrective = spec.variant == Variant::dkibo;
  std::vector<TrajectoryRow> rows;
  rows.reserve(f.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto& p = result.trajectory[k];
    best = std::min(best, f[k]);
    TrajectoryRow row;
    row.variant = std::string(to_string(spec.variant));
    row.benchmark = bench.name;
    row.acquisition = std::string(to_string(spec.acquisition.kind));
    row.kappa = spec.acquisition.kappa;
    row.regressor = std::string(to_string(corrective ? spec.regressor.kind : RegressorKind::none));
    row.trial = trial;
    row.seed = result.seed;
    row.evaluation = static_cast<int>(k) + 1;
    row.iteration = p.iteration;
    row.x.assign(p.x.data(), p.x.data() + p.x.size());
    row.y = f[k];
    row.best_y = best;
    row.simple_regret = simple[k];
    row.cmr = cmr[k];
    if (!p.initial) row.gamma = p.gamma;
    row.dropped = p.dropped;
    rows.push_back(std::move(row));
  }
  return rows;
}

RunOutcome run_experiments(const RunConfig& config,
                           const std::function<void(std::size_t, std::size_t)>& progress) {
  struct Task {
    const ExperimentSpec* spec;
    const BenchmarkFn* bench;
    int trial;
  };
  std::vector<Task> tasks;
  for (const auto& spec : config.experiments)
    for (const auto& name : spec.benchmarks)
      for (int t = 0; t < spec.trials; ++t) tasks.push_back({&spec, &find_benchmark(name), t});

  std::vector<std::optional<CampaignResult>> results(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const Task& task = tasks[k];
      try {
        results[k] = run_trial(*task.spec, *task.bench, task.trial);
      } catch (const std::exception& e) {
        errors[k] = e.what();
        spdlog::error("{} on {} trial {} failed: {}", task.spec->name, task.bench->name, task.trial,
                      e.what());
      }
      const std::size_t finished = ++done;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, tasks.size());
      }
    }
  };

  unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                  : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker);
  }

  RunOutcome outcome;
  outcome.trials_total = tasks.size();
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const Task& task = tasks[k];
    if (results[k]) {
      ++outcome.trials_done;
      auto rows = trial_rows(*task.spec, *task.bench, task.trial, *results[k], config.cmr_mode);
      outcome.rows.insert(outcome.rows.end(), std::make_move_iterator(rows.begin()),
                          std::make_move_iterator(rows.end()));
    } else {
      outcome.failures.push_back({task.spec->name, task.bench->name, task.trial, errors[k]});
    }
  }
  return outcome;
}

void write_outputs(const RunConfig& config, const RunOutcome& outcome) {
  const auto& dir = config.output_dir;
  std::filesystem::create_directories(dir);
  std::vector<std::string> files{"trajectories.csv"};
  {
    std::ofstream out(dir / "trajectories.csv", std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (dir / "trajectories.csv").string());
    write_trajectories(out, outcome.rows);
  }
  if (!outcome.rows.empty()) {
    write_report(dir, summarize(outcome.rows));
    files.insert(files.end(), {"summary.csv", "bands.csv", "table_simple_regret.csv", "table_cmr.csv"});
  }
  std::ofstream manifest(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!manifest) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
  manifest << manifest_text(outcome, files);
}

}  // namespace dkibo
