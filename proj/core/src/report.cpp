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

#include "dkibo/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <tuple>

namespace dkibo {

namespace {

std::string cell(const Distribution& d) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.3g±%.3g", d.median, d.stddev);
  return buf;
}

std::string join_outliers(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ";" : "") + format_double(v[k]);
  return s;
}

void open_for_write(std::ofstream& f, const std::filesystem::path& p) {
  f.open(p, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + p.string());
}

}  // namespace

std::vector<SummaryGroup> summarize(const std::vector<TrajectoryRow>& rows) {
  using Key = std::tuple<std::string, std::string, std::string, double>;
  std::vector<Key> order;
  std::map<Key, std::map<int, std::vector<const TrajectoryRow*>>> grouped;
  for (const auto& r : rows) {
    Key key{r.variant, r.benchmark, r.acquisition, r.kappa};
    if (!grouped.contains(key)) order.push_back(key);
    grouped[key][r.trial].push_back(&r);
  }

  std::vector<SummaryGroup> out;
  for (const auto& key : order) {
    SummaryGroup g;
    std::tie(g.variant, g.benchmark, g.acquisition, g.kappa) = key;
    for (auto& [trial, trial_rows] : grouped[key]) {
      std::stable_sort(trial_rows.begin(), trial_rows.end(),
                       [](const auto* a, const auto* b) { return a->evaluation < b->evaluation; });
      RegretSeries s;
      s.seed = trial_rows.front()->seed;
      for (const auto* r : trial_rows) {
        s.simple.push_back(r->simple_regret);
        s.cmr.push_back(r->cmr);
        s.iterations = std::max(s.iterations, r->iteration);
        if (r->dropped && r->iteration > 0 && !s.drop_iteration) s.drop_iteration = r->iteration;
      }
      g.trials.push_back(std::move(s));
    }
    g.stats = aggregate(g.trials);
    out.push_back(std::move(g));
  }
  return out;
}

void write_summary(std::ostream& out, const std::vector<SummaryGroup>& groups) {
  out << kSummarySchema << '\n'
      << "variant,benchmark,acquisition,kappa,trials,evaluations,"
         "simple_regret_median,simple_regret_std,simple_regret_p25,simple_regret_p75,"
         "cmr_median,cmr_std,cmr_p25,cmr_p75,"
         "dropped_trials,usage_median,usage_p25,usage_p75,usage_outliers\n";
  for (const auto& g : groups) {
    const auto& s = g.stats;
    out << g.variant << ',' << g.benchmark << ',' << g.acquisition << ',' << format_double(g.kappa)
        << ',' << g.trials.size() << ',' << s.simple_by_step.size() << ','
        << format_double(s.final_simple.median) << ',' << format_double(s.final_simple.stddev)
        << ',' << format_double(s.final_simple.p25) << ',' << format_double(s.final_simple.p75)
        << ',' << format_double(s.final_cmr.median) << ',' << format_double(s.final_cmr.stddev)
        << ',' << format_double(s.final_cmr.p25) << ',' << format_double(s.final_cmr.p75) << ','
        << s.usage.dropped << ',' << format_double(s.usage.usage.median) << ','
        << format_double(s.usage.usage.p25) << ',' << format_double(s.usage.usage.p75) << ','
        << join_outliers(s.usage.outliers) << '\n';
  }
}

void write_bands(std::ostream& out, const std::vector<SummaryGroup>& groups) {
  out << kBandsSchema << '\n'
      << "variant,benchmark,acquisition,kappa,evaluation,simple_regret_median,simple_regret_p25,"
         "simple_regret_p75,cmr_median,cmr_p25,cmr_p75\n";
  for (const auto& g : groups) {
    for (std::size_t s = 0; s < g.stats.simple_by_step.size(); ++s) {
      const auto& a = g.stats.simple_by_step[s];
      const auto& c = g.stats.cmr_by_step[s];
      out << g.variant << ',' << g.benchmark << ',' << g.acquisition << ','
          << format_double(g.kappa) << ',' << s + 1 << ',' << format_double(a.median) << ','
          << format_double(a.p25) << ',' << format_double(a.p75) << ',' << format_double(c.median)
          << ',' << format_double(c.p25) << ',' << format_double(c.p75) << '\n';
    }
  }
}

void write_table(std::ostream& out, const std::vector<SummaryGroup>& groups, TableMetric metric) {
  using Column = std::tuple<std::string, std::string, double>;
  std::vector<Column> columns;
  std::vector<std::string> rows;
  for (const auto& g : groups) {
    Column c{g.variant, g.acquisition, g.kappa};
    if (std::find(columns.begin(), columns.end(), c) == columns.end()) columns.push_back(c);
    if (std::find(rows.begin(), rows.end(), g.benchmark) == rows.end()) rows.push_back(g.benchmark);
  }
  auto distinct = [&](auto getter) {
    std::vector<decltype(getter(columns.front()))> seen;
    for (const auto& c : columns)
      if (std::find(seen.begin(), seen.end(), getter(c)) == seen.end()) seen.push_back(getter(c));
    return seen.size();
  };
  const bool show_acq = !columns.empty() && distinct([](const Column& c) { return std::get<1>(c); }) > 1;
  const bool show_kappa = !columns.empty() && distinct([](const Column& c) { return std::get<2>(c); }) > 1;

  out << kTableSchema << '\n'
      << (metric == TableMetric::simple_regret ? "simple_regret" : "cmr") << " median±std\n"
      << "benchmark";
  for (const auto& [variant, acq, kappa] : columns) {
    out << ',' << variant;
    if (show_acq) out << '/' << acq;
    if (show_kappa) out << "/kappa=" << format_double(kappa);
  }
  out << '\n';
  for (const auto& bench : rows) {
    out << bench;
    for (const auto& c : columns) {
      out << ',';
      for (const auto& g : groups) {
        if (g.benchmark == bench && Column{g.variant, g.acquisition, g.kappa} == c) {
          out << cell(metric == TableMetric::simple_regret ? g.stats.final_simple
                                                           : g.stats.final_cmr);
          break;
        }
      }
    }
    out << '\n';
  }
}

void write_report(const std::filesystem::path& dir, const std::vector<SummaryGroup>& groups) {
  std::filesystem::create_directories(dir);
  std::ofstream f;
  open_for_write(f, dir / "summary.csv");
  write_summary(f, groups);
  f.close();
  open_for_write(f, dir / "bands.csv");
  write_bands(f, groups);
  f.close();
  open_for_write(f, dir / "table_simple_regret.csv");
  write_table(f, groups, TableMetric::simple_regret);
  f.close();
  open_for_write(f, dir / "table_cmr.csv");
  write_table(f, groups, TableMetric::cmr);
}

}  // namespace dkibo
