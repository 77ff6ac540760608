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

#ifndef DKIBO_REGRET_HPP
#define DKIBO_REGRET_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace dkibo {

/// How cumulative mean regret averages. instantaneous (default) averages
/// f(x_k) - f_min; running_simple averages the simple regret series.
enum class CmrMode { instantaneous, running_simple };

std::optional<CmrMode> parse_cmr_mode(std::string_view name);

/// min_{k<=t} f(x_k) - f_min for every t. Values below f_min (reference
/// rounding) are clamped to 0.
std::vector<double> simple_regret_series(std::span<const double> f_values, double f_min);
double simple_regret(std::span<const double> f_values, double f_min);

std::vector<double> cumulative_mean_regret_series(std::span<const double> f_values, double f_min,
                                                  CmrMode mode = CmrMode::instantaneous);
/// Value at the final step.
double cumulative_mean_regret(std::span<const double> f_values, double f_min,
                              CmrMode mode = CmrMode::instantaneous);

/// Percentile with linear interpolation between closest ranks:
/// h = (n - 1) q / 100, result = v[floor h] + (h - floor h)(v[floor h + 1] - v[floor h]).
/// q in [0, 100]; values need not be sorted.
double percentile(std::vector<double> values, double q);
double median(std::vector<double> values);
/// Population standard deviation (divides by n).
double population_stddev(std::span<const double> values);

struct RegretSeries {
  std::vector<double> simple;
  std::vector<double> cmr;
  std::uint64_t seed = 0;
  std::optional<int> drop_iteration;
  int iterations = 0;  // BO iterations run (i_max)
};

struct Distribution {
  double median = 0.0;
  double stddev = 0.0;
  double p25 = 0.0;
  double p75 = 0.0;
};

Distribution describe(std::span<const double> values);

/// Box-plot statistics for how long the corrective term stayed active: the
/// drop iteration, or the full run length when it never dropped.
struct UsageStats {
  std::size_t trials = 0;
  std::size_t dropped = 0;
  Distribution usage;
  double lower_fence = 0.0;  // p25 - 1.5 IQR
  double upper_fence = 0.0;  // p75 + 1.5 IQR
  std::vector<double> outliers;  // ascending
};

struct Aggregate {
  std::vector<Distribution> simple_by_step;  // per evaluation
  std::vector<Distribution> cmr_by_step;
  Distribution final_simple;
  Distribution final_cmr;
  UsageStats usage;
};

/// Summary over trials. Per-step bands cover the shortest trial. Order of
/// the trials does not matter. Requires at least one trial.
Aggregate aggregate(std::span<const RegretSeries> trials);

}  // namespace dkibo

#endif  // DKIBO_REGRET_HPP
