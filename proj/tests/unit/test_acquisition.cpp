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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "dkibo/acquisition.hpp"
#include "dkibo/rng.hpp"

namespace dkibo {
namespace {

TEST(Acquisition, ClosedFormValues) {
  EXPECT_DOUBLE_EQ(ucb(1.0, 0.5, 2.0), 2.0);
  EXPECT_NEAR(expected_improvement(1.0, 1.0, 0.0, 0.0), 1.0833154705876863, 1e-14);
  EXPECT_NEAR(probability_of_improvement(1.0, 1.0, 0.0, 0.0), 0.84134474606854295, 1e-14);
  EXPECT_NEAR(expected_improvement(1.0, 2.0, 1.5, 0.0), 0.57268939644716028, 1e-14);
  EXPECT_NEAR(expected_improvement(1.0, 2.0, 1.0, 0.5), 0.57268939644716028, 1e-14);
  EXPECT_DOUBLE_EQ(expected_improvement(2.0, 0.0, 1.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(expected_improvement(0.0, 0.0, 1.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(probability_of_improvement(2.0, 0.0, 1.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(probability_of_improvement(0.0, 0.0, 1.0, 0.0), 0.0);
}

TEST(Acquisition, ImprovementBoundsHold) {
  Rng rng(41);
  for (int k = 0; k < 2000; ++k) {
    const double mu = rng.uniform(-5.0, 5.0);
    const double s = rng.uniform(0.0, 3.0);
    const double best = rng.uniform(-5.0, 5.0);
    const double ei = expected_improvement(mu, s, best, 0.0);
    EXPECT_GE(ei, std::max(mu - best, 0.0) - 1e-12);
    EXPECT_LE(ei, expected_improvement(mu + 0.1, s, best, 0.0) + 1e-15);
    const double pi = probability_of_improvement(mu, s, best, 0.0);
    EXPECT_GE(pi, 0.0);
    EXPECT_LE(pi, 1.0);
  }
}

TEST(Gamma, UcbIsOneOthersUseRatio) {
  const std::vector<double> acq{0.2, 0.4, 0.6};
  const std::vector<double> xi{1.0, 2.0, 3.0};
  EXPECT_DOUBLE_EQ(compute_gamma(AcquisitionKind::ucb, acq, xi).gamma, 1.0);
  EXPECT_NEAR(compute_gamma(AcquisitionKind::ei, acq, xi).gamma, 0.2, 1e-15);
  EXPECT_NEAR(compute_gamma(AcquisitionKind::poi, acq, xi).gamma, 0.2, 1e-15);
  const std::vector<double> neg{-1.0, -2.0, -3.0};
  EXPECT_NEAR(compute_gamma(AcquisitionKind::ei, acq, neg).gamma, -0.2, 1e-15);
}

TEST(Gamma, VanishingDenominatorGivesZero) {
  const std::vector<double> acq{0.2, 0.4};
  const std::vector<double> xi{1.0, -1.0};
  const auto g = compute_gamma(AcquisitionKind::ei, acq, xi);
  EXPECT_TRUE(g.degenerate);
  EXPECT_EQ(g.gamma, 0.0);
}

TEST(Schedule, Values) {
  EXPECT_EQ(schedule_weight(0, 100), 0.0);
  EXPECT_DOUBLE_EQ(schedule_weight(1, 100), 4e-4);
  EXPECT_DOUBLE_EQ(schedule_weight(25, 100), 0.25);
  EXPECT_DOUBLE_EQ(schedule_weight(50, 100), 1.0);
  EXPECT_DOUBLE_EQ(schedule_weight(100, 100), 1.0);
}

TEST(Schedule, PointwiseAndMonotone) {
  for (int i_max : {1, 7, 20, 100, 333}) {
    double prev = 0.0;
    for (int i = 1; i <= 2 * i_max; ++i) {
      const double h = schedule_weight(i, i_max);
      EXPECT_DOUBLE_EQ(h, std::min(1.0, 4.0 * i * i / (double(i_max) * i_max)));
      EXPECT_GE(h, prev);
      EXPECT_LE(h, 1.0);
      prev = h;
    }
  }
}

TEST(EarlyStop, Examples) {
  Vector a(2), b(2), m(2);
  a << 0.0, 0.0;
  b << 0.01, 0.0;
  m << 1.0, 0.0;
  EXPECT_TRUE(early_stop_check(a, b, m, 0.05));
  b << 0.2, 0.0;
  EXPECT_FALSE(early_stop_check(a, b, m, 0.05));
  EXPECT_TRUE(early_stop_check(a, m, m, 0.05));

  std::vector<Vector> history(2, Vector(2));
  history[0] << 0.0, 0.0;
  history[1] << 2.0, 0.0;
  b << 0.01, 0.0;
  EXPECT_TRUE(early_stop_check(a, b, history, 0.05));
  EXPECT_THROW(early_stop_check(a, b, std::span<const Vector>{}, 0.05), std::invalid_argument);
}

TEST(EarlyStop, MatchesDirectRatioOnFuzzedTriples) {
  Rng rng(1000);
  int checked = 0;
  for (int k = 0; k < 1000; ++k) {
    const int d = 1 + static_cast<int>(rng.index(6));
    Vector prev(d), next(d), mean(d);
    const double spread = rng.uniform() < 0.5 ? 0.05 : 1.0;
    for (int j = 0; j < d; ++j) {
      prev[j] = rng.uniform();
      next[j] = prev[j] + spread * rng.uniform(-0.1, 0.1);
      mean[j] = rng.uniform();
    }
    long double num = 0, den = 0;
    for (int j = 0; j < d; ++j) {
      num += (long double)(prev[j] - next[j]) * (prev[j] - next[j]);
      den += (long double)(next[j] - mean[j]) * (next[j] - mean[j]);
    }
    const long double ratio = std::sqrt(num) / std::sqrt(den);
    if (std::abs(ratio - 0.05L) < 1e-9L) continue;
    EXPECT_EQ(early_stop_check(prev, next, mean, 0.05), ratio < 0.05L) << k;
    ++checked;
  }
  EXPECT_GT(checked, 990);
}

TEST(AugmentState, DropIsPermanent) {
  AugmentState s;
  s.gamma = 0.7;
  EXPECT_DOUBLE_EQ(s.effective_gamma(), 0.7);
  s.drop(5);
  s.drop(9);
  EXPECT_TRUE(s.dropped);
  EXPECT_EQ(s.drop_iteration, 5);
  EXPECT_EQ(s.effective_gamma(), 0.0);
}

class AugmentedFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    Matrix X(4, 2);
    X << 0.1, 0.2, 0.8, 0.3, 0.4, 0.9, 0.6, 0.6;
    Vector y(4);
    y << 1.0, -0.5, 0.3, 2.0;
    gp = GpModel::condition(X, y, MeanMode::zero, {0.4, 1.0, 1e-4});
    Vector t(4);
    t << 3.0, 1.0, -2.0, 0.5;
    Rng rng(0);
    xi = Regressor::fit(X, t, RegressorSpec::defaults(RegressorKind::linear), rng);
    z.resize(2);
    z << 0.35, 0.55;
  }
  GpModel gp;
  Regressor xi;
  Vector z;
};

TEST_F(AugmentedFixture, AddsScaledCorrection) {
  AcquisitionConfig cfg;
  cfg.i_max = 40;
  AugmentState state;
  state.gamma = 1.5;
  const double base = base_acquisition(gp, z, cfg, 0.0);
  for (int i : {0, 1, 10, 20, 40}) {
    const double expect = base + 1.5 * schedule_weight(i, 40) * xi.predict(z);
    EXPECT_NEAR(augmented_acquisition(z, gp, xi, state, cfg, i, 0.0), expect, 1e-12);
  }
  cfg.schedule_enabled = false;
  EXPECT_NEAR(augmented_acquisition(z, gp, xi, state, cfg, 1, 0.0), base + 1.5 * xi.predict(z),
              1e-12);
  state.drop(3);
  EXPECT_EQ(augmented_acquisition(z, gp, xi, state, cfg, 10, 0.0), base);
}

TEST_F(AugmentedFixture, NoneRegressorLeavesBaseUntouched) {
  AcquisitionConfig cfg;
  AugmentState state;
  for (auto kind : {AcquisitionKind::ucb, AcquisitionKind::ei, AcquisitionKind::poi}) {
    cfg.kind = kind;
    EXPECT_EQ(augmented_acquisition(z, gp, Regressor{}, state, cfg, 60, 0.5),
              base_acquisition(gp, z, cfg, 0.5));
  }
}

TEST(Maximizer, FindsSmoothPeak) {
  const AcquisitionField field = [](const Vector& z) {
    return -(z[0] - 0.3) * (z[0] - 0.3) - (z[1] - 0.7) * (z[1] - 0.7);
  };
  Rng rng(8);
  const Vector best = maximize_acquisition(field, 2, rng);
  EXPECT_NEAR(best[0], 0.3, 1e-3);
  EXPECT_NEAR(best[1], 0.7, 1e-3);
}

TEST(Maximizer, StaysInBoxForBoundaryPeak) {
  const AcquisitionField field = [](const Vector& z) { return z.sum(); };
  Rng rng(9);
  const Vector best = maximize_acquisition(field, 3, rng);
  EXPECT_TRUE((best.array() >= 0.0).all() && (best.array() <= 1.0).all());
  EXPECT_GT(best.sum(), 2.99);
}

TEST(Maximizer, DeterministicAndTieBreaksToFirstCandidate) {
  const AcquisitionField flat = [](const Vector&) { return 1.0; };
  Rng a(10), b(10), draws(10);
  const Vector za = maximize_acquisition(flat, 2, a);
  const Vector zb = maximize_acquisition(flat, 2, b);
  EXPECT_EQ(za, zb);
  EXPECT_EQ(za[0], draws.uniform());
  EXPECT_EQ(za[1], draws.uniform());
}

TEST(Maximizer, IgnoresNaNRegions) {
  const AcquisitionField field = [](const Vector& z) {
    return z[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : z[0];
  };
  Rng rng(11);
  const Vector best = maximize_acquisition(field, 1, rng);
  EXPECT_LE(best[0], 0.5);
  EXPECT_GT(best[0], 0.49);
}

TEST(AcquisitionConfig, Validation) {
  AcquisitionConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.kappa = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.epsilon = -1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.i_max = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  EXPECT_EQ(parse_acquisition_kind("EI"), AcquisitionKind::ei);
  EXPECT_FALSE(parse_acquisition_kind("thompson").has_value());
}

}  // namespace
}  // namespace dkibo
