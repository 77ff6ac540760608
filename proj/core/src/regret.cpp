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

#include "dkibo/regret.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <spdlog/spdlog.h>

namespace dkibo {

std::optional<CmrMode> parse_cmr_mode(std::string_view name) {
  if (name == "instantaneous") return CmrMode::instantaneous;
  if (name == "running_simple") return CmrMode::running_simple;
  return std::nullopt;
}

std::vector<double> simple_regret_series(std::span<const double> f_values, double f_min) {
  std::vector<double> out;
  out.reserve(f_values.size());
  double best = std::numeric_limits<double>::infinity();
  for (double f : f_values) {
    best = std::min(best, f);
    double r = best - f_min;
    if (r < 0.0) {
      if (r < -1e-9) spdlog::info("regret {} below zero clamped (reference optimum gap)", r);
      r = 0.0;
    }
    out.push_back(r);
  }
  return out;
}

double simple_regret(std::span<const double> f_values, double f_min) {
  if (f_values.empty()) throw std::invalid_argument("simple regret of an empty series");
  return simple_regret_series(f_values, f_min).back();
}

std::vector<double> cumulative_mean_regret_series(std::span<const double> f_values, double f_min,
                                                  CmrMode mode) {
  std::vector<double> terms;
  if (mode == CmrMode::running_simple) {
    terms = simple_regret_series(f_values, f_min);
  } else {
    terms.reserve(f_values.size());
    for (double f : f_values) terms.push_back(std::max(f - f_min, 0.0));
  }
  std::vector<double> out;
  out.reserve(terms.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    sum += terms[t];
    out.push_back(sum / static_cast<double>(t + 1));
  }
  return out;
}

double cumulative_mean_regret(std::span<const double> f_values, double f_min, CmrMode mode) {
  if (f_values.empty()) throw std::invalid_argument("cumulative mean regret of an empty series");
  return cumulative_mean_regret_series(f_values, f_min, mode).back();
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of an empty set");
  if (!(q >= 0.0 && q <= 100.0)) throw std::invalid_argument("percentile rank outside [0, 100]");
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * q / 100.0;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return percentile(std::move(values), 50.0); }

double population_stddev(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / n);
}

Distribution describe(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());  // fixes summation order for the stddev
  return {percentile(v, 50.0), population_stddev(v), percentile(v, 25.0), percentile(v, 75.0)};
}

Aggregate aggregate(std::span<const RegretSeries> trials) {
  if (trials.empty()) throw std::invalid_argument("aggregate needs at least one trial");
  Aggregate out;
  std::size_t steps = std::numeric_limits<std::size_t>::max();
  for (const auto& t : trials) steps = std::min({steps, t.simple.size(), t.cmr.size()});

  std::vector<double> column(trials.size());
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t k = 0; k < trials.size(); ++k) column[k] = trials[k].simple[s];
    out.simple_by_step.push_back(describe(column));
    for (std::size_t k = 0; k < trials.size(); ++k) column[k] = trials[k].cmr[s];
    out.cmr_by_step.push_back(describe(column));
  }
  std::vector<double> finals_simple, finals_cmr, usage;
  for (const auto& t : trials) {
    if (!t.simple.empty()) finals_simple.push_back(t.simple.back());
    if (!t.cmr.empty()) finals_cmr.push_back(t.cmr.back());
    usage.push_back(static_cast<double>(t.drop_iteration.value_or(t.iterations)));
    if (t.drop_iteration) ++out.usage.dropped;
  }
  if (!finals_simple.empty()) out.final_simple = describe(finals_simple);
  if (!finals_cmr.empty()) out.final_cmr = describe(finals_cmr);

  out.usage.trials = trials.size();
  out.usage.usage = describe(usage);
  const double iqr = out.usage.usage.p75 - out.usage.usage.p25;
  out.usage.lower_fence = out.usage.usage.p25 - 1.5 * iqr;
  out.usage.upper_fence = out.usage.usage.p75 + 1.5 * iqr;
  for (double u : usage)
    if (u < out.usage.lower_fence || u > out.usage.upper_fence) out.usage.outliers.push_back(u);
  std::sort(out.usage.outliers.begin(), out.usage.outliers.end());
  return out;
}

}  // namespace dkibo
