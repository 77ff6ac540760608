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

#ifndef DKIBO_REPORT_HPP
#define DKIBO_REPORT_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dkibo/csv.hpp"
#include "dkibo/regret.hpp"

namespace dkibo {

/// Trials sharing (variant, benchmark, acquisition, kappa).
struct SummaryGroup {
  std::string variant;
  std::string benchmark;
  std::string acquisition;
  double kappa = 0.0;
  std::vector<RegretSeries> trials;  // ordered by trial index
  Aggregate stats;
};

/// Groups rows in first-appearance order and aggregates each group.
std::vector<SummaryGroup> summarize(const std::vector<TrajectoryRow>& rows);

inline constexpr std::string_view kSummarySchema = "# dkibo-summary v1";
inline constexpr std::string_view kBandsSchema = "# dkibo-bands v1";
inline constexpr std::string_view kTableSchema = "# dkibo-table v1";

enum class TableMetric { simple_regret, cmr };

/// One line per group: final simple regret and CMR distributions plus
/// corrective-term usage statistics.
void write_summary(std::ostream& out, const std::vector<SummaryGroup>& groups);
/// Per-evaluation median and [25, 75] band of both regrets.
void write_bands(std::ostream& out, const std::vector<SummaryGroup>& groups);
/// Benchmarks down, optimizers across, "median±stddev" cells.
void write_table(std::ostream& out, const std::vector<SummaryGroup>& groups, TableMetric metric);

/// Writes summary.csv, bands.csv, table_simple_regret.csv and table_cmr.csv
/// into dir.
void write_report(const std::filesystem::path& dir, const std::vector<SummaryGroup>& groups);

}  // namespace dkibo

#endif  // DKIBO_REPORT_HPP
