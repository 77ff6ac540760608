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

#ifndef DKIBO_CSV_HPP
#define DKIBO_CSV_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dkibo {

/// First line of every trajectory file.
inline constexpr std::string_view kTrajectorySchema = "# dkibo-trajectories v1";

/// One evaluation of one trial. x is in original units; y, best_y and the
/// regrets use the benchmark's own (minimization) convention.
struct TrajectoryRow {
  std::string variant;
  std::string benchmark;
  std::string acquisition;
  double kappa = 0.0;
  std::string regressor;
  int trial = 0;
  std::uint64_t seed = 0;
  int evaluation = 0;  // 1-based position in the trial
  int iteration = 0;   // 0 for the initial design
  std::vector<double> x;
  double y = 0.0;
  double best_y = 0.0;
  double simple_regret = 0.0;
  double cmr = 0.0;
  std::optional<double> gamma;  // empty for initial-design rows
  bool dropped = false;
};

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Splits on ',' (fields never contain quotes or commas).
std::vector<std::string> split_fields(std::string_view line, char sep = ',');

void write_trajectories(std::ostream& out, const std::vector<TrajectoryRow>& rows);
/// Throws CsvError on a missing schema line, a wrong header or a bad field.
std::vector<TrajectoryRow> read_trajectories(std::istream& in);

}  // namespace dkibo

#endif  // DKIBO_CSV_HPP
