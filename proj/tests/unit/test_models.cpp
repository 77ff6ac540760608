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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <Eigen/QR>
#include <gtest/gtest.h>

#include "dkibo/models.hpp"
#include "dkibo/rng.hpp"

namespace dkibo {
namespace {

struct Data {
  Matrix X;
  Vector y;
};

// Coarse grids produce ties in both features and targets.
Data fuzz_dataset(Rng& rng) {
  const int n = 2 + static_cast<int>(rng.index(49));
  const int d = 1 + static_cast<int>(rng.index(5));
  const bool coarse = rng.uniform() < 0.4;
  Data out{Matrix(n, d), Vector(n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j)
      out.X(i, j) = coarse ? static_cast<double>(rng.index(4)) / 4.0 : rng.uniform();
    out.y[i] = coarse ? static_cast<double>(rng.index(3)) : rng.uniform(-2.0, 2.0);
  }
  return out;
}

double side_sse(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double s = 0.0;
  for (double t : v) s += (t - m) * (t - m);
  return s;
}

double direct_sse(const Data& data, int dim, double threshold) {
  std::vector<double> left, right;
  for (Eigen::Index i = 0; i < data.X.rows(); ++i)
    (data.X(i, dim) <= threshold ? left : right).push_back(data.y[i]);
  return side_sse(left) + side_sse(right);
}

TEST(FindBestSplit, MatchesBruteForce) {
  Rng rng(314);
  for (int trial = 0; trial < 400; ++trial) {
    const Data data = fuzz_dataset(rng);
    const int min_leaf = 1 + static_cast<int>(rng.index(3));
    std::vector<std::size_t> rows(static_cast<std::size_t>(data.X.rows()));
    std::iota(rows.begin(), rows.end(), std::size_t{0});

    std::optional<double> best;
    for (int dim = 0; dim < data.X.cols(); ++dim) {
      std::vector<double> vals(data.X.col(dim).data(), data.X.col(dim).data() + data.X.rows());
      std::sort(vals.begin(), vals.end());
      vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
      for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
        const double thr = 0.5 * (vals[k] + vals[k + 1]);
        const auto n_left = (data.X.col(dim).array() <= thr).count();
        if (n_left < min_leaf || data.X.rows() - n_left < min_leaf) continue;
        const double sse = direct_sse(data, dim, thr);
        if (!best || sse < *best) best = sse;
      }
    }

    const auto split = find_best_split(data.X, data.y, rows, min_leaf);
    ASSERT_EQ(split.has_value(), best.has_value()) << "trial " << trial;
    if (!split) continue;
    const double scale = 1.0 + data.y.squaredNorm();
    EXPECT_NEAR(split->sse, *best, 1e-9 * scale) << "trial " << trial;
    EXPECT_NEAR(direct_sse(data, split->dim, split->threshold), *best, 1e-9 * scale)
        << "trial " << trial;
  }
}

TEST(FindBestSplit, TiesGoToLowerDimension) {
  Matrix X(4, 2);
  X << 0, 0, 0, 0, 1, 1, 1, 1;
  Vector y(4);
  y << 0, 0, 1, 1;
  std::vector<std::size_t> rows{0, 1, 2, 3};
  const auto split = find_best_split(X, y, rows, 1);
  ASSERT_TRUE(split);
  EXPECT_EQ(split->dim, 0);
  EXPECT_DOUBLE_EQ(split->threshold, 0.5);
  EXPECT_DOUBLE_EQ(split->sse, 0.0);
}

TEST(RegressionTree, LeavesHoldMeansAndDepthIsCapped) {
  Rng rng(27);
  for (int trial = 0; trial < 100; ++trial) {
    const Data data = fuzz_dataset(rng);
    const int max_depth = static_cast<int>(rng.index(6));
    const auto tree = RegressionTree::fit(data.X, data.y, max_depth);
    EXPECT_LE(tree.depth(), max_depth);
    EXPECT_LE(tree.leaf_count(), std::size_t{1} << max_depth);

    std::map<double, std::vector<double>> by_prediction;
    for (Eigen::Index i = 0; i < data.X.rows(); ++i)
      by_prediction[tree.predict(data.X.row(i).transpose())].push_back(data.y[i]);
    double total = 0.0;
    for (const auto& [pred, ys] : by_prediction) {
      const double m = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
      total += static_cast<double>(ys.size()) * std::abs(m - pred);
    }
    EXPECT_LT(total, 1e-9 * static_cast<double>(data.X.rows())) << "trial " << trial;
  }
}

TEST(RegressionTree, DepthZeroPredictsMean) {
  Rng rng(1);
  const Data data = fuzz_dataset(rng);
  const auto tree = RegressionTree::fit(data.X, data.y, 0);
  EXPECT_EQ(tree.node_count(), 1u);
  EXPECT_NEAR(tree.predict(data.X.row(0).transpose()), data.y.mean(), 1e-12);
}

TEST(RegressionTree, DeepTreeInterpolatesDistinctInputs) {
  Rng rng(5);
  Matrix X(30, 2);
  Vector y(30);
  for (int i = 0; i < 30; ++i) {
    X(i, 0) = rng.uniform();
    X(i, 1) = rng.uniform();
    y[i] = rng.uniform(-1.0, 1.0);
  }
  const auto tree = RegressionTree::fit(X, y, 30);
  for (int i = 0; i < 30; ++i) EXPECT_DOUBLE_EQ(tree.predict(X.row(i).transpose()), y[i]);
}

Data wavy(Rng& rng, int n, int d) {
  Data out{Matrix(n, d), Vector(n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) out.X(i, j) = rng.uniform();
    out.y[i] = std::sin(4.0 * out.X(i, 0)) + out.X.row(i).sum();
  }
  return out;
}

TEST(Forest, PredictionsStayInTargetRange) {
  Rng data_rng(6);
  const Data data = wavy(data_rng, 40, 3);
  Rng rng(3);
  const auto rf = Regressor::fit(data.X, data.y,
                                 RegressorSpec::defaults(RegressorKind::random_forest), rng);
  EXPECT_EQ(rf.trees().size(), 20u);
  for (const auto& t : rf.trees()) EXPECT_LE(t.depth(), 5);
  for (int k = 0; k < 500; ++k) {
    const Vector z = Vector::NullaryExpr(3, [&] { return data_rng.uniform(); });
    const double p = rf.predict(z);
    EXPECT_GE(p, data.y.minCoeff());
    EXPECT_LE(p, data.y.maxCoeff());
  }
}

TEST(Forest, ConstantTargetsGiveConstantModel) {
  Rng data_rng(2);
  Data data = wavy(data_rng, 15, 2);
  data.y.setConstant(-3.5);
  Rng rng(0);
  const auto rf = Regressor::fit(data.X, data.y,
                                 RegressorSpec::defaults(RegressorKind::random_forest), rng);
  EXPECT_DOUBLE_EQ(rf.predict(Vector::Constant(2, 0.3)), -3.5);
}

TEST(Forest, WithoutRandomnessEqualsSingleTree) {
  Rng data_rng(12);
  const Data data = wavy(data_rng, 25, 2);
  auto spec = RegressorSpec::defaults(RegressorKind::random_forest);
  spec.bootstrap = false;
  Rng rng(4);
  const auto rf = Regressor::fit(data.X, data.y, spec, rng);
  const auto tree = RegressionTree::fit(data.X, data.y, spec.max_depth);
  for (int k = 0; k < 100; ++k) {
    const Vector z = Vector::NullaryExpr(2, [&] { return data_rng.uniform(); });
    EXPECT_NEAR(rf.predict(z), tree.predict(z), 1e-12);
  }
}

TEST(Forest, SameSeedSameModel) {
  Rng data_rng(13);
  const Data data = wavy(data_rng, 25, 4);
  auto spec = RegressorSpec::defaults(RegressorKind::random_forest);
  spec.max_features = 2;
  Rng a(77), b(77), c(78);
  const auto ma = Regressor::fit(data.X, data.y, spec, a);
  const auto mb = Regressor::fit(data.X, data.y, spec, b);
  const auto mc = Regressor::fit(data.X, data.y, spec, c);
  bool differs = false;
  for (int k = 0; k < 100; ++k) {
    const Vector z = Vector::NullaryExpr(4, [&] { return data_rng.uniform(); });
    EXPECT_EQ(ma.predict(z), mb.predict(z));
    differs = differs || ma.predict(z) != mc.predict(z);
  }
  EXPECT_TRUE(differs);
}

double training_mse(const Regressor& m, const Data& data) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < data.X.rows(); ++i) {
    const double e = m.predict(data.X.row(i).transpose()) - data.y[i];
    s += e * e;
  }
  return s / static_cast<double>(data.X.rows());
}

TEST(Boosting, TrainingErrorDoesNotIncreaseWithStages) {
  Rng data_rng(15);
  const Data data = wavy(data_rng, 30, 2);
  auto spec = RegressorSpec::defaults(RegressorKind::gradient_boosting);
  double prev = std::numeric_limits<double>::infinity();
  for (int stages = 0; stages <= 20; ++stages) {
    spec.n_estimators = stages;
    Rng rng(1);
    const double mse = training_mse(Regressor::fit(data.X, data.y, spec, rng), data);
    EXPECT_LE(mse, prev + 1e-12) << stages;
    prev = mse;
  }
}

TEST(Boosting, ZeroLearningRatePredictsMean) {
  Rng data_rng(16);
  const Data data = wavy(data_rng, 20, 2);
  auto spec = RegressorSpec::defaults(RegressorKind::gradient_boosting);
  spec.learning_rate = 0.0;
  Rng rng(1);
  const auto gb = Regressor::fit(data.X, data.y, spec, rng);
  EXPECT_NEAR(gb.predict(Vector::Constant(2, 0.1)), data.y.mean(), 1e-12);
}

TEST(Linear, RecoversExactPlane) {
  Rng rng(18);
  Matrix X(20, 3);
  Vector y(20);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 3; ++j) X(i, j) = rng.uniform();
    y[i] = 1.5 + 2.0 * X(i, 0) - X(i, 1) + 0.25 * X(i, 2);
  }
  const auto fit = fit_linear(X, y);
  EXPECT_NEAR(fit.intercept, 1.5, 1e-6);
  EXPECT_NEAR(fit.beta[0], 2.0, 1e-6);
  EXPECT_NEAR(fit.beta[1], -1.0, 1e-6);
  EXPECT_NEAR(fit.beta[2], 0.25, 1e-6);
}

TEST(Linear, MatchesQrLeastSquares) {
  Rng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng.index(5));
    const int n = d + 2 + static_cast<int>(rng.index(30));
    Matrix A(n, d + 1);
    Vector y(n);
    for (int i = 0; i < n; ++i) {
      A(i, 0) = 1.0;
      for (int j = 0; j < d; ++j) A(i, j + 1) = rng.uniform();
      y[i] = rng.uniform(-3.0, 3.0);
    }
    const Vector coef = A.householderQr().solve(y);
    const auto fit = fit_linear(A.rightCols(d), y, 0.0);
    EXPECT_NEAR(fit.intercept, coef[0], 1e-8) << trial;
    for (int j = 0; j < d; ++j) EXPECT_NEAR(fit.beta[j], coef[j + 1], 1e-8) << trial;
    const Vector residual = y - A.rightCols(d) * fit.beta - Vector::Constant(n, fit.intercept);
    EXPECT_LT((A.transpose() * residual).norm(), 1e-9 * (1.0 + y.norm()) * n) << trial;
  }
}

TEST(Linear, RankDeficientStaysFinite) {
  Matrix X(2, 4);
  X << 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8;
  Vector y(2);
  y << 1.0, 2.0;
  Rng rng(0);
  const auto m = Regressor::fit(X, y, RegressorSpec::defaults(RegressorKind::linear), rng);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(m.predict(X.row(i).transpose()), y[i], 1e-6);
  EXPECT_TRUE(std::isfinite(m.predict(Vector::Constant(4, 0.9))));
}

TEST(Regressor, NoneIsZero) {
  Regressor none;
  EXPECT_EQ(none.predict(Vector::Constant(3, 0.4)), 0.0);
}

TEST(Regressor, NamesAndValidation) {
  EXPECT_EQ(parse_regressor_kind("rf"), RegressorKind::random_forest);
  EXPECT_EQ(parse_regressor_kind("gradient_boosting"), RegressorKind::gradient_boosting);
  EXPECT_FALSE(parse_regressor_kind("svm").has_value());
  auto spec = RegressorSpec::defaults(RegressorKind::random_forest);
  spec.min_samples_leaf = 0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = RegressorSpec::defaults(RegressorKind::gradient_boosting);
  spec.learning_rate = -0.1;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace dkibo
