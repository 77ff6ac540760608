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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "dkibo/bench.hpp"
#include "dkibo/csv.hpp"
#include "dkibo/state_file.hpp"

namespace dkibo::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "-q");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("dkibo-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  fs::path dir;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kUsage);
  EXPECT_EQ(invoke({"suggest"}).code, kUsage);
  EXPECT_EQ(invoke({"--help"}).code, kOk);
}

TEST_F(CliTest, ConfigErrors) {
  std::ofstream(path("bad.json")) << R"({"schema_version": 1, "experiments": [{"benchmark": "x"}]})";
  const auto r = invoke({"run", path("bad.json")});
  EXPECT_EQ(r.code, kConfigError);
  EXPECT_NE(r.err.find("experiments[0].benchmark"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"run", path("missing.json")}).code, kConfigError);
  EXPECT_EQ(invoke({"init", path("s.json"), "--benchmark", "sphere"}).code, kConfigError);
  EXPECT_EQ(invoke({"init", path("s.json")}).code, kConfigError);
  EXPECT_EQ(invoke({"init", path("s.json"), "--lower", "0", "--upper", "1", "--n-init", "1"}).code,
            kConfigError);
}

TEST_F(CliTest, StateErrors) {
  EXPECT_EQ(invoke({"suggest", path("nothing.json")}).code, kStateError);
  std::ofstream(path("garbage.json")) << "{]";
  EXPECT_EQ(invoke({"suggest", path("garbage.json")}).code, kStateError);
  ASSERT_EQ(invoke({"init", path("s.json"), "--benchmark", "branin"}).code, kOk);
  EXPECT_EQ(invoke({"init", path("s.json"), "--benchmark", "branin"}).code, kStateError);
  EXPECT_EQ(invoke({"init", path("s.json"), "--benchmark", "branin", "--force"}).code, kOk);
}

TEST_F(CliTest, SuggestIsPureAndObserveValidates) {
  ASSERT_EQ(invoke({"init", path("s.json"), "--lower", "0,0", "--upper", "1,2"}).code, kOk);
  const std::string before = slurp(path("s.json"));
  const auto a = invoke({"suggest", path("s.json")});
  const auto b = invoke({"suggest", path("s.json")});
  EXPECT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(slurp(path("s.json")), before);

  for (const auto& args : std::vector<std::vector<std::string>>{
           {"observe", path("s.json"), "--y", "1", "--x", "0.5,3"},
           {"observe", path("s.json"), "--y", "nan"},
           {"observe", path("s.json"), "--y", "1", "--x", "0.5"}}) {
    EXPECT_EQ(invoke(args).code, kStateError) << args.back();
    EXPECT_EQ(slurp(path("s.json")), before);
  }
  EXPECT_EQ(invoke({"observe", path("s.json"), "--y", "one"}).code, kUsage);
  EXPECT_EQ(invoke({"observe", path("s.json"), "--y", "2.5"}).code, kOk);
  EXPECT_NE(slurp(path("s.json")), before);
}

TEST_F(CliTest, ReplayMatchesRun) {
  const int i_max = 12;
  std::ofstream(path("cfg.json")) << R"({"schema_version": 1, "jobs": 1, "experiments": [
      {"variant": "dkibo", "benchmark": "branin", "trials": 1, "base_seed": 3, "i_max": )"
                                  << i_max << "}]}";
  ASSERT_EQ(invoke({"run", path("cfg.json"), "-o", path("out")}).code, kOk);
  std::ifstream csv(path("out/trajectories.csv"));
  const auto rows = read_trajectories(csv);
  ASSERT_EQ(rows.size(), 5u + i_max);

  ASSERT_EQ(invoke({"init", path("s.json"), "--benchmark", "branin", "--seed", "3", "--i-max",
                    std::to_string(i_max)})
                .code,
            kOk);
  for (int k = 0; k < 5 + i_max; ++k) {
    const auto s = invoke({"suggest", path("s.json"), "--precision", "0"});
    ASSERT_EQ(s.code, kOk);
    const std::string xs = s.out.substr(0, s.out.find('\n'));
    Vector x(2);
    const auto comma = xs.find(',');
    x << std::stod(xs.substr(0, comma)), std::stod(xs.substr(comma + 1));
    ASSERT_EQ(x[0], rows[k].x[0]) << "step " << k;
    ASSERT_EQ(x[1], rows[k].x[1]) << "step " << k;
    ASSERT_EQ(invoke({"observe", path("s.json"), "--x", xs, "--y", format_double(branin(x))}).code,
              kOk);
  }
  const auto session = load_session(path("s.json"));
  const auto& t = session.campaign.trajectory();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(-t[k].y, rows[k].y) << k;
    EXPECT_EQ(t[k].dropped, rows[k].dropped) << k;
  }
}

TEST_F(CliTest, SurfaceDump) {
  ASSERT_EQ(invoke({"init", path("s.json"), "--benchmark", "branin", "--variant", "sbo"}).code, kOk);
  EXPECT_EQ(invoke({"surface", path("s.json")}).code, kStateError);
  for (int k = 0; k < 6; ++k) {
    const auto s = invoke({"suggest", path("s.json"), "--precision", "0"});
    const std::string xs = s.out.substr(0, s.out.find('\n'));
    const auto comma = xs.find(',');
    Vector x(2);
    x << std::stod(xs.substr(0, comma)), std::stod(xs.substr(comma + 1));
    ASSERT_EQ(invoke({"observe", path("s.json"), "--y", format_double(branin(x))}).code, kOk);
  }
  const auto r = invoke({"surface", path("s.json"), "-r", "7"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "# dkibo-surface v1");
  std::getline(lines, line);
  EXPECT_EQ(line, "x0,x1,gp_mean,gp_sigma,xi_value,augmented_acq");
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    const auto f = split_fields(line);
    ASSERT_EQ(f.size(), 6u);
    EXPECT_EQ(f[4], "0");  // sbo has no corrective term
    EXPECT_GE(std::stod(f[3]), 0.0);
  }
  EXPECT_EQ(count, 49);

  ASSERT_EQ(invoke({"surface", path("s.json"), "-r", "5", "--dims", "1", "-o", path("s.csv")}).code,
            kOk);
  EXPECT_EQ(split_fields(slurp(path("s.csv")), '\n').size(), 2u + 5u + 1u);
  EXPECT_EQ(invoke({"surface", path("s.json"), "--dims", "4"}).code, kUsage);
}

TEST_F(CliTest, SurfaceNeedsSliceAboveTwoDimensions) {
  ASSERT_EQ(invoke({"init", path("s.json"), "--benchmark", "hartmann6"}).code, kOk);
  for (int k = 0; k < 2; ++k) ASSERT_EQ(invoke({"observe", path("s.json"), "--y", "-1"}).code, kOk);
  EXPECT_EQ(invoke({"surface", path("s.json")}).code, kUsage);
  EXPECT_EQ(invoke({"surface", path("s.json"), "--dims", "0,3", "-r", "3"}).code, kOk);
}

TEST_F(CliTest, ReportFromTrajectories) {
  fs::copy_file(fs::path(DKIBO_TEST_DATA_DIR) / "five_trials.csv", dir / "t.csv");
  ASSERT_EQ(invoke({"report", path("t.csv"), "-o", path("rep")}).code, kOk);
  EXPECT_TRUE(fs::exists(dir / "rep" / "table_cmr.csv"));
  std::ofstream(path("empty.csv")) << "not a trajectory file\n";
  EXPECT_EQ(invoke({"report", path("empty.csv")}).code, kIoError);
}

TEST_F(CliTest, RunHonorsEnvironmentButFlagsWin) {
  std::ofstream(path("cfg.json")) << R"({"schema_version": 1, "output_dir": ")" << path("cfg-out")
                                  << R"(", "experiments": [
      {"variant": "rs", "benchmark": "ackley", "trials": 2, "i_max": 3}]})";
  ::setenv("DKIBO_OUTPUT_DIR", path("env-out").c_str(), 1);
  ::setenv("DKIBO_JOBS", "2", 1);
  EXPECT_EQ(invoke({"run", path("cfg.json")}).code, kOk);
  EXPECT_TRUE(fs::exists(dir / "env-out" / "manifest.json"));
  EXPECT_EQ(invoke({"run", path("cfg.json"), "-o", path("flag-out")}).code, kOk);
  EXPECT_TRUE(fs::exists(dir / "flag-out" / "manifest.json"));
  EXPECT_EQ(slurp(path("env-out/trajectories.csv")), slurp(path("flag-out/trajectories.csv")));
  ::setenv("DKIBO_JOBS", "many", 1);
  EXPECT_EQ(invoke({"run", path("cfg.json")}).code, kConfigError);
  ::unsetenv("DKIBO_OUTPUT_DIR");
  ::unsetenv("DKIBO_JOBS");
  EXPECT_FALSE(fs::exists(dir / "cfg-out"));
}

}  // namespace
}  // namespace dkibo::cli
