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

#include "dkibo/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

namespace dkibo {

namespace {

constexpr std::string_view kHeader =
    "variant,benchmark,acquisition,kappa,regressor,trial,seed,evaluation,iteration,x,y,best_y,"
    "simple_regret,cmr,gamma,dropped";
constexpr std::size_t kColumns = 16;

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw CsvError("line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

template <typename Int>
Int parse_int(const std::string& s, std::size_t line) {
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw CsvError("line " + std::to_string(line) + ": bad integer '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<std::string> split_fields(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      return out;
    }
    out.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

void write_trajectories(std::ostream& out, const std::vector<TrajectoryRow>& rows) {
  out << kTrajectorySchema << '\n' << kHeader << '\n';
  for (const auto& r : rows) {
    out << r.variant << ',' << r.benchmark << ',' << r.acquisition << ',' << format_double(r.kappa)
        << ',' << r.regressor << ',' << r.trial << ',' << r.seed << ',' << r.evaluation << ','
        << r.iteration << ',';
    for (std::size_t j = 0; j < r.x.size(); ++j) out << (j ? ";" : "") << format_double(r.x[j]);
    out << ',' << format_double(r.y) << ',' << format_double(r.best_y) << ','
        << format_double(r.simple_regret) << ',' << format_double(r.cmr) << ','
        << (r.gamma ? format_double(*r.gamma) : std::string()) << ',' << (r.dropped ? 1 : 0)
        << '\n';
  }
}

std::vector<TrajectoryRow> read_trajectories(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTrajectorySchema)
    throw CsvError("missing schema line '" + std::string(kTrajectorySchema) + "'");
  if (!std::getline(in, line) || line != kHeader) throw CsvError("unexpected trajectory header");

  std::vector<TrajectoryRow> rows;
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != kColumns)
      throw CsvError("line " + std::to_string(line_no) + ": expected " +
                     std::to_string(kColumns) + " fields, found " + std::to_string(f.size()));
    TrajectoryRow r;
    r.variant = f[0];
    r.benchmark = f[1];
    r.acquisition = f[2];
    r.kappa = parse_double(f[3], line_no);
    r.regressor = f[4];
    r.trial = parse_int<int>(f[5], line_no);
    r.seed = parse_int<std::uint64_t>(f[6], line_no);
    r.evaluation = parse_int<int>(f[7], line_no);
    r.iteration = parse_int<int>(f[8], line_no);
    if (!f[9].empty())
      for (const auto& c : split_fields(f[9], ';')) r.x.push_back(parse_double(c, line_no));
    r.y = parse_double(f[10], line_no);
    r.best_y = parse_double(f[11], line_no);
    r.simple_regret = parse_double(f[12], line_no);
    r.cmr = parse_double(f[13], line_no);
    if (!f[14].empty()) r.gamma = parse_double(f[14], line_no);
    r.dropped = parse_int<int>(f[15], line_no) != 0;
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace dkibo
