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

#include "dkibo/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace dkibo {

std::string_view to_string(RegressorKind kind) {
  switch (kind) {
    case RegressorKind::none: return "none";
    case RegressorKind::random_forest: return "random_forest";
    case RegressorKind::gradient_boosting: return "gradient_boosting";
    case RegressorKind::linear: return "linear";
  }
  return "none";
}

std::optional<RegressorKind> parse_regressor_kind(std::string_view name) {
  if (name == "none") return RegressorKind::none;
  if (name == "random_forest" || name == "rf") return RegressorKind::random_forest;
  if (name == "gradient_boosting" || name == "gb") return RegressorKind::gradient_boosting;
  if (name == "linear") return RegressorKind::linear;
  return std::nullopt;
}

RegressorSpec RegressorSpec::defaults(RegressorKind kind) {
  RegressorSpec spec;
  spec.kind = kind;
  switch (kind) {
    case RegressorKind::random_forest:
      spec.n_estimators = 20;
      spec.max_depth = 5;
      break;
    case RegressorKind::gradient_boosting:
      spec.n_estimators = 20;
      spec.max_depth = 3;
      spec.bootstrap = false;
      break;
    case RegressorKind::linear:
    case RegressorKind::none:
      spec.bootstrap = false;
      break;
  }
  return spec;
}

void RegressorSpec::validate() const {
  if (n_estimators < 0) throw std::invalid_argument("n_estimators must be >= 0");
  if (max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
  if (min_samples_leaf < 1) throw std::invalid_argument("min_samples_leaf must be >= 1");
  if (max_features < 0) throw std::invalid_argument("max_features must be >= 0");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
    throw std::invalid_argument("learning_rate must be finite and >= 0");
}

// ---------------------------------------------------------------------------
// CART

std::optional<Split> find_best_split(const Matrix& X, const Vector& y,
                                     std::span<const std::size_t> rows, int min_samples_leaf,
                                     std::span<const int> dims) {
  const std::size_t n = rows.size();
  const auto min_leaf = static_cast<std::size_t>(std::max(1, min_samples_leaf));
  if (n < 2 * min_leaf) return std::nullopt;

  // Sums are taken about the node mean to limit cancellation in sumsq - sum^2/n.
  double mean = 0.0;
  for (auto r : rows) mean += y[static_cast<Eigen::Index>(r)];
  mean /= static_cast<double>(n);

  std::vector<int> all_dims;
  if (dims.empty()) {
    all_dims.resize(static_cast<std::size_t>(X.cols()));
    std::iota(all_dims.begin(), all_dims.end(), 0);
    dims = all_dims;
  }

  std::optional<Split> best;
  std::vector<std::pair<double, double>> column(n);  // (feature, centered target)
  for (int dim : dims) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto r = static_cast<Eigen::Index>(rows[k]);
      column[k] = {X(r, dim), y[r] - mean};
    }
    std::sort(column.begin(), column.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    double total_sum = 0.0, total_sq = 0.0;
    for (const auto& [f, t] : column) {
      total_sum += t;
      total_sq += t * t;
    }
    double left_sum = 0.0, left_sq = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      left_sum += column[k].second;
      left_sq += column[k].second * column[k].second;
      const std::size_t n_left = k + 1;
      const std::size_t n_right = n - n_left;
      if (column[k].first == column[k + 1].first) continue;
      if (n_left < min_leaf || n_right < min_leaf) continue;
      const double right_sum = total_sum - left_sum;
      const double right_sq = total_sq - left_sq;
      const double sse = (left_sq - left_sum * left_sum / static_cast<double>(n_left)) +
                         (right_sq - right_sum * right_sum / static_cast<double>(n_right));
      if (!best || sse < best->sse) {
        best = Split{dim, 0.5 * (column[k].first + column[k + 1].first), std::max(sse, 0.0)};
      }
    }
  }
  return best;
}

RegressionTree RegressionTree::fit(const Matrix& X, const Vector& y,
                                   std::span<const std::size_t> rows, int max_depth,
                                   int min_samples_leaf, int max_features, Rng* feature_rng) {
  if (rows.empty()) throw std::invalid_argument("regression tree needs at least one row");
  if (max_features > 0 && feature_rng == nullptr)
    throw std::invalid_argument("feature subsampling needs an rng");
  RegressionTree tree;
  std::vector<std::size_t> work(rows.begin(), rows.end());
  tree.grow(X, y, work, 0, max_depth, min_samples_leaf, max_features, feature_rng);
  return tree;
}

RegressionTree RegressionTree::fit(const Matrix& X, const Vector& y, int max_depth,
                                   int min_samples_leaf) {
  std::vector<std::size_t> rows(static_cast<std::size_t>(X.rows()));
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return fit(X, y, rows, max_depth, min_samples_leaf);
}

int RegressionTree::grow(const Matrix& X, const Vector& y, std::vector<std::size_t>& rows,
                         int depth, int max_depth, int min_samples_leaf, int max_features,
                         Rng* feature_rng) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();

  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (auto r : rows) {
    const double v = y[static_cast<Eigen::Index>(r)];
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  nodes_[id].value = sum / static_cast<double>(rows.size());
  nodes_[id].samples = static_cast<int>(rows.size());
  if (depth >= max_depth || lo == hi) return id;

  std::vector<int> dims;
  const int d = static_cast<int>(X.cols());
  if (max_features > 0 && max_features < d) {
    std::vector<int> pool(static_cast<std::size_t>(d));
    std::iota(pool.begin(), pool.end(), 0);
    for (int k = 0; k < max_features; ++k) {
      const auto pick = k + static_cast<int>(feature_rng->index(static_cast<std::size_t>(d - k)));
      std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(pick)]);
    }
    dims.assign(pool.begin(), pool.begin() + max_features);
    std::sort(dims.begin(), dims.end());
  }

  const auto split = find_best_split(X, y, rows, min_samples_leaf, dims);
  if (!split) return id;

  std::vector<std::size_t> left_rows, right_rows;
  for (auto r : rows) {
    if (X(static_cast<Eigen::Index>(r), split->dim) <= split->threshold)
      left_rows.push_back(r);
    else
      right_rows.push_back(r);
  }
  rows.clear();
  rows.shrink_to_fit();

  const int left = grow(X, y, left_rows, depth + 1, max_depth, min_samples_leaf, max_features,
                        feature_rng);
  const int right = grow(X, y, right_rows, depth + 1, max_depth, min_samples_leaf, max_features,
                         feature_rng);
  Node& node = nodes_[id];
  node.dim = split->dim;
  node.value = split->threshold;
  node.left = left;
  node.right = right;
  return id;
}

double RegressionTree::predict(const Vector& z) const {
  int i = 0;
  while (nodes_[static_cast<std::size_t>(i)].dim >= 0) {
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    i = z[n.dim] <= n.value ? n.left : n.right;
  }
  return nodes_[static_cast<std::size_t>(i)].value;
}

int RegressionTree::depth() const {
  std::vector<int> level(nodes_.size(), 0);
  int deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, level[i]);
    if (nodes_[i].dim >= 0) {
      level[static_cast<std::size_t>(nodes_[i].left)] = level[i] + 1;
      level[static_cast<std::size_t>(nodes_[i].right)] = level[i] + 1;
    }
  }
  return deepest;
}

std::size_t RegressionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.dim < 0; }));
}

// ---------------------------------------------------------------------------
// Linear least squares

LinearFit fit_linear(const Matrix& X, const Vector& y, double ridge) {
  if (X.rows() < 1) throw std::invalid_argument("linear fit needs at least one row");
  const Eigen::RowVectorXd x_mean = X.colwise().mean();
  const double y_mean = y.mean();
  const Matrix Xc = X.rowwise() - x_mean;
  const Vector yc = y.array() - y_mean;

  Matrix gram = Xc.transpose() * Xc;
  gram.diagonal().array() += ridge;
  LinearFit fit;
  fit.beta = gram.ldlt().solve(Xc.transpose() * yc);
  fit.intercept = y_mean - x_mean.dot(fit.beta);
  return fit;
}

// ---------------------------------------------------------------------------
// Ensembles

Regressor Regressor::fit(const Matrix& X, const Vector& y, const RegressorSpec& spec, Rng& rng) {
  spec.validate();
  if (X.rows() < 1) throw std::invalid_argument("regressor needs at least one row");
  Regressor model;
  model.spec_ = spec;
  const auto n = static_cast<std::size_t>(X.rows());

  switch (spec.kind) {
    case RegressorKind::none:
      break;

    case RegressorKind::linear:
      model.linear_ = fit_linear(X, y);
      break;

    case RegressorKind::random_forest: {
      model.trees_.reserve(static_cast<std::size_t>(spec.n_estimators));
      std::vector<std::size_t> rows(n);
      for (int t = 0; t < spec.n_estimators; ++t) {
        Rng tree_rng = rng.fork(static_cast<std::uint64_t>(t));
        if (spec.bootstrap) {
          for (auto& r : rows) r = tree_rng.index(n);
        } else {
          std::iota(rows.begin(), rows.end(), std::size_t{0});
        }
        model.trees_.push_back(RegressionTree::fit(X, y, rows, spec.max_depth,
                                                   spec.min_samples_leaf, spec.max_features,
                                                   &tree_rng));
      }
      break;
    }

    case RegressorKind::gradient_boosting: {
      model.base_ = y.mean();
      if (spec.learning_rate == 0.0) break;
      Vector current = Vector::Constant(y.size(), model.base_);
      std::vector<std::size_t> rows(n);
      std::iota(rows.begin(), rows.end(), std::size_t{0});
      model.trees_.reserve(static_cast<std::size_t>(spec.n_estimators));
      for (int k = 0; k < spec.n_estimators; ++k) {
        Rng stage_rng = rng.fork(static_cast<std::uint64_t>(k));
        const Vector residual = y - current;
        auto tree = RegressionTree::fit(X, residual, rows, spec.max_depth, spec.min_samples_leaf,
                                        spec.max_features, &stage_rng);
        for (Eigen::Index i = 0; i < X.rows(); ++i)
          current[i] += spec.learning_rate * tree.predict(X.row(i).transpose());
        model.trees_.push_back(std::move(tree));
      }
      break;
    }
  }
  return model;
}

double Regressor::predict(const Vector& z) const {
  switch (spec_.kind) {
    case RegressorKind::none:
      return 0.0;
    case RegressorKind::linear:
      return linear_->predict(z);
    case RegressorKind::random_forest: {
      if (trees_.empty()) return 0.0;
      double sum = 0.0;
      for (const auto& t : trees_) sum += t.predict(z);
      return sum / static_cast<double>(trees_.size());
    }
    case RegressorKind::gradient_boosting: {
      double sum = 0.0;
      for (const auto& t : trees_) sum += t.predict(z);
      return base_ + spec_.learning_rate * sum;
    }
  }
  return 0.0;
}

}  // namespace dkibo
