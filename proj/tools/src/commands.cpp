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

#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "dkibo/bench.hpp"
#include "dkibo/csv.hpp"
#include "dkibo/experiment.hpp"
#include "dkibo/report.hpp"
#include "dkibo/state_file.hpp"

namespace dkibo::cli {

namespace {

/// A bad command-line value discovered after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  for (const auto& field : split_fields(text)) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    while (first < last && *first == ' ') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || field.empty())
      throw UsageError(flag + ": cannot parse '" + field + "' as a number");
    out.push_back(v);
  }
  return out;
}

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string format_number(double v, int precision) {
  if (precision <= 0) return format_double(v);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

std::string join(const Vector& x, int precision) {
  std::string s;
  for (Eigen::Index j = 0; j < x.size(); ++j) s += (j ? "," : "") + format_number(x[j], precision);
  return s;
}

void use_stderr_logger(bool quiet) {
  static const auto logger = [] {
    auto l = spdlog::stderr_color_mt("dkibo-cli");
    spdlog::set_default_logger(l);
    return l;
  }();
  logger->set_level(quiet ? spdlog::level::err : spdlog::level::info);
}

struct RunArgs {
  std::string config;
  std::string output_dir;
  int jobs = -1;
};

int cmd_run(const RunArgs& a, std::ostream& out) {
  RunConfig config = load_run_config(a.config);
  apply_environment(config);
  if (!a.output_dir.empty()) config.output_dir = a.output_dir;
  if (a.jobs >= 0) config.jobs = a.jobs;
  std::size_t last_percent = 0;
  const auto outcome = run_experiments(config, [&](std::size_t done, std::size_t total) {
    const std::size_t percent = 100 * done / total;
    if (percent / 10 != last_percent / 10 || done == total) {
      spdlog::info("{}/{} trials finished", done, total);
      last_percent = percent;
    }
  });
  write_outputs(config, outcome);
  out << (config.output_dir / "trajectories.csv").string() << '\n';
  if (!outcome.complete()) {
    spdlog::error("{} of {} trials failed; manifest.json lists them", outcome.failures.size(),
                  outcome.trials_total);
    return kObjectiveError;
  }
  return kOk;
}

struct InitArgs {
  std::string state;
  std::string benchmark;
  std::string lower;
  std::string upper;
  std::string goal;
  std::string variant = "dkibo";
  std::string acquisition = "ucb";
  double kappa = 2.6;
  double xi_offset = 0.0;
  double epsilon = 0.05;
  std::string regressor = "random_forest";
  std::string mean_mode = "zero";
  int n_init = 5;
  int i_max = 100;
  std::uint64_t seed = 0;
  bool force = false;
};

int cmd_init(const InitArgs& a, std::ostream& out) {
  std::optional<SearchSpace> space;
  Goal goal = Goal::maximize;
  std::optional<std::string> benchmark;
  if (!a.benchmark.empty()) {
    const BenchmarkFn* bench = nullptr;
    try {
      bench = &find_benchmark(a.benchmark);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("--benchmark", e.what());
    }
    space = bench->space;
    goal = Goal::minimize;
    benchmark = bench->name;
  }
  if (!a.lower.empty() || !a.upper.empty()) {
    if (space) throw ConfigError("--lower", "give either --benchmark or --lower/--upper");
    try {
      space = SearchSpace(parse_list(a.lower, "--lower"), parse_list(a.upper, "--upper"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("--lower/--upper", e.what());
    }
  }
  if (!space) throw ConfigError("--benchmark", "give --benchmark or --lower and --upper");
  if (a.goal == "minimize") goal = Goal::minimize;
  else if (a.goal == "maximize") goal = Goal::maximize;
  else if (!a.goal.empty()) throw ConfigError("--goal", "expected maximize or minimize");

  CampaignConfig config{*space};
  const auto variant = parse_variant(a.variant);
  if (!variant) throw ConfigError("--variant", "unknown variant '" + a.variant + "'");
  config.variant = *variant;
  const auto acq = parse_acquisition_kind(a.acquisition);
  if (!acq) throw ConfigError("--acquisition", "unknown acquisition '" + a.acquisition + "'");
  config.acquisition.kind = *acq;
  config.acquisition.kappa = a.kappa;
  config.acquisition.xi_offset = a.xi_offset;
  config.acquisition.epsilon = a.epsilon;
  config.acquisition.i_max = std::max(1, a.i_max);
  const auto kind = parse_regressor_kind(a.regressor);
  if (!kind) throw ConfigError("--regressor", "unknown regressor '" + a.regressor + "'");
  config.regressor = RegressorSpec::defaults(*kind);
  const auto mean = parse_mean_mode(a.mean_mode);
  if (!mean) throw ConfigError("--mean-mode", "expected zero or linear");
  config.mean_mode = *mean;
  config.n_init = a.n_init;
  config.i_max = a.i_max;
  config.seed = a.seed;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("init", e.what());
  }
  if (std::filesystem::exists(a.state) && !a.force)
    throw StateError(StateErrorCode::io, a.state + " exists; pass --force to overwrite");
  save_session(a.state, Session{Campaign(std::move(config)), goal, benchmark});
  out << a.state << '\n';
  return kOk;
}

struct SuggestArgs {
  std::string state;
  int precision = 12;
};

int cmd_suggest(const SuggestArgs& a, std::ostream& out) {
  const Session session = load_session(a.state);
  out << join(suggest(session), a.precision) << '\n';
  return kOk;
}

struct ObserveArgs {
  std::string state;
  std::string x;
  std::string y;
};

int cmd_observe(const ObserveArgs& a, std::ostream& out) {
  Session session = load_session(a.state);
  std::optional<Vector> x;
  if (!a.x.empty()) x = to_vector(parse_list(a.x, "--x"));
  const auto y = parse_list(a.y, "--y");
  if (y.size() != 1) throw UsageError("--y: expected one number");
  observe(session, x, y.front());
  save_session(a.state, session);
  const auto& t = session.campaign.trajectory();
  out << "observations " << t.size() << " iteration " << t.back().iteration
      << (t.back().dropped ? " dropped" : "") << '\n';
  return kOk;
}

struct SurfaceArgs {
  std::string state;
  int resolution = 50;
  std::string dims;
  std::string output;
};

/// Grid over the two sliced dimensions (or the only one); the remaining
/// coordinates stay at the incumbent.
int cmd_surface(const SurfaceArgs& a, std::ostream& out) {
  const Session session = load_session(a.state);
  const Campaign& campaign = session.campaign;
  const auto& space = campaign.config().space;
  const int dim = static_cast<int>(space.dim());
  if (a.resolution < 1) throw UsageError("--resolution must be >= 1");
  if (campaign.data().size() < 2)
    throw StateError(StateErrorCode::invalid_config,
                     "surface needs at least two observations to fit the models");

  std::vector<int> dims;
  if (!a.dims.empty()) {
    for (double d : parse_list(a.dims, "--dims")) {
      if (d != std::floor(d) || d < 0 || d >= dim)
        throw UsageError("--dims: indices must be integers in [0, " + std::to_string(dim) + ")");
      dims.push_back(static_cast<int>(d));
    }
    if (dims.empty() || dims.size() > 2 || (dims.size() == 2 && dims[0] == dims[1]))
      throw UsageError("--dims: give one or two distinct indices");
  } else if (dim <= 2) {
    for (int j = 0; j < dim; ++j) dims.push_back(j);
  } else {
    throw UsageError("surface on a " + std::to_string(dim) +
                     "-dimensional space requires --dims i,j to name a 2-d slice");
  }

  const auto models = campaign.fit_models();
  const Matrix X = campaign.data().normalized_inputs();
  const Vector y = campaign.data().targets();
  Eigen::Index best = 0;
  y.maxCoeff(&best);
  const Vector anchor = X.row(best).transpose();

  std::ofstream file;
  std::ostream* sink = &out;
  if (!a.output.empty()) {
    file.open(a.output, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + a.output);
    sink = &file;
  }
  std::ostream& os = *sink;
  os << "# dkibo-surface v1\n";
  for (int j = 0; j < dim; ++j) os << 'x' << j << ',';
  os << "gp_mean,gp_sigma,xi_value,augmented_acq\n";

  // + 0.0 maps -0 to 0
  const double sign = session.goal == Goal::minimize ? -1.0 : 1.0;
  auto user = [sign](double v) { return sign * v + 0.0; };
  auto level = [&](int k) {
    return a.resolution == 1 ? 0.5 : static_cast<double>(k) / (a.resolution - 1);
  };
  const int outer = a.resolution;
  const int inner = dims.size() == 2 ? a.resolution : 1;
  for (int i = 0; i < outer; ++i) {
    for (int k = 0; k < inner; ++k) {
      Vector z = anchor;
      z[dims[0]] = level(i);
      if (dims.size() == 2) z[dims[1]] = level(k);
      const auto pred = models.gp.predict(z);
      const Vector x = space.denormalize(z);
      for (int j = 0; j < dim; ++j) os << format_double(x[j]) << ',';
      os << format_double(user(pred.mean)) << ',' << format_double(pred.stddev) << ','
         << format_double(user(models.xi.predict(z))) << ','
         << format_double(campaign.acquisition_value(models, z)) << '\n';
    }
  }
  return kOk;
}

struct ReportArgs {
  std::vector<std::string> inputs;
  std::string output_dir;
};

int cmd_report(const ReportArgs& a, std::ostream& out) {
  std::vector<TrajectoryRow> rows;
  for (const auto& path : a.inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    auto part = read_trajectories(in);
    rows.insert(rows.end(), std::make_move_iterator(part.begin()),
                std::make_move_iterator(part.end()));
  }
  if (rows.empty()) throw CsvError("no trajectory rows in the input");
  const std::filesystem::path dir =
      a.output_dir.empty() ? std::filesystem::path(a.inputs.front()).parent_path()
                           : std::filesystem::path(a.output_dir);
  write_report(dir.empty() ? "." : dir, summarize(rows));
  out << (dir / "summary.csv").string() << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bayesian optimization with an injected corrective model", "dkibo"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Only log errors");

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run the experiments of a JSON config file");
  run_cmd->add_option("config", run_args.config, "Experiment config (JSON)")->required();
  run_cmd->add_option("-o,--output-dir", run_args.output_dir,
                      "Output directory (overrides DKIBO_OUTPUT_DIR and the config)");
  run_cmd->add_option("-j,--jobs", run_args.jobs,
                      "Parallel trials; 0 uses every core (overrides DKIBO_JOBS and the config)");

  InitArgs init_args;
  auto* init_cmd = app.add_subcommand("init", "Create an ask/tell state file");
  init_cmd->add_option("state", init_args.state, "State file to create")->required();
  init_cmd->add_option("--benchmark", init_args.benchmark,
                       "Use a built-in benchmark's domain (goal defaults to minimize)");
  init_cmd->add_option("--lower", init_args.lower, "Comma-separated lower bounds");
  init_cmd->add_option("--upper", init_args.upper, "Comma-separated upper bounds");
  init_cmd->add_option("--goal", init_args.goal, "maximize or minimize")
      ->check(CLI::IsMember({"maximize", "minimize"}));
  init_cmd->add_option("--variant", init_args.variant, "dkibo, sbo, rs, linear_mean, linear_mean_es")
      ->capture_default_str();
  init_cmd->add_option("--acquisition", init_args.acquisition, "ucb, ei or poi")
      ->capture_default_str();
  init_cmd->add_option("--kappa", init_args.kappa, "UCB exploration weight")->capture_default_str();
  init_cmd->add_option("--xi-offset", init_args.xi_offset, "EI/POI improvement offset")
      ->capture_default_str();
  init_cmd->add_option("--epsilon", init_args.epsilon, "Early-stop threshold")->capture_default_str();
  init_cmd->add_option("--regressor", init_args.regressor,
                       "Corrective model: none, random_forest, gradient_boosting, linear")
      ->capture_default_str();
  init_cmd->add_option("--mean-mode", init_args.mean_mode, "GP prior mean: zero or linear")
      ->capture_default_str();
  init_cmd->add_option("--n-init", init_args.n_init, "Initial design size")->capture_default_str();
  init_cmd->add_option("--i-max", init_args.i_max, "Planned BO iterations")->capture_default_str();
  init_cmd->add_option("--seed", init_args.seed, "Random seed")->capture_default_str();
  init_cmd->add_flag("--force", init_args.force, "Overwrite an existing state file");

  SuggestArgs suggest_args;
  auto* suggest_cmd = app.add_subcommand("suggest", "Print the next point to evaluate");
  suggest_cmd->add_option("state", suggest_args.state, "State file")->required();
  suggest_cmd->add_option("--precision", suggest_args.precision,
                          "Significant digits; 0 prints the shortest exact form")
      ->capture_default_str();

  ObserveArgs observe_args;
  auto* observe_cmd = app.add_subcommand("observe", "Record an objective value");
  observe_cmd->add_option("state", observe_args.state, "State file")->required();
  observe_cmd->add_option("--y", observe_args.y, "Objective value")->required();
  observe_cmd->add_option("--x", observe_args.x,
                          "Comma-separated point; defaults to the pending suggestion");

  SurfaceArgs surface_args;
  auto* surface_cmd = app.add_subcommand("surface", "Dump GP, corrective model and acquisition on a grid");
  surface_cmd->add_option("state", surface_args.state, "State file")->required();
  surface_cmd->add_option("-r,--resolution", surface_args.resolution, "Points per axis")
      ->capture_default_str();
  surface_cmd->add_option("--dims", surface_args.dims,
                          "Dimensions of the 2-d slice, e.g. 0,3 (required above 2-d)");
  surface_cmd->add_option("-o,--output", surface_args.output, "CSV file (default stdout)");

  ReportArgs report_args;
  auto* report_cmd = app.add_subcommand("report", "Summary tables from trajectory CSV files");
  report_cmd->add_option("inputs", report_args.inputs, "trajectories.csv files")->required();
  report_cmd->add_option("-o,--output-dir", report_args.output_dir,
                         "Where to write the tables (default: next to the first input)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  use_stderr_logger(quiet);

  try {
    if (*run_cmd) return cmd_run(run_args, out);
    if (*init_cmd) return cmd_init(init_args, out);
    if (*suggest_cmd) return cmd_suggest(suggest_args, out);
    if (*observe_cmd) return cmd_observe(observe_args, out);
    if (*surface_cmd) return cmd_surface(surface_args, out);
    if (*report_cmd) return cmd_report(report_args, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ObjectiveError& e) {
    err << "objective error: " << e.what() << '\n';
    return kObjectiveError;
  } catch (const StateError& e) {
    err << "state error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kStateError;
  } catch (const CsvError& e) {
    err << "csv error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kUsage;
}

}  // namespace dkibo::cli
