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

#ifndef DKIBO_MODELS_HPP
#define DKIBO_MODELS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dkibo/rng.hpp"
#include "dkibo/space.hpp"

namespace dkibo {

enum class RegressorKind { none, random_forest, gradient_boosting, linear };

std::string_view to_string(RegressorKind kind);
/// Accepts "none", "random_forest"/"rf", "gradient_boosting"/"gb", "linear".
std::optional<RegressorKind> parse_regressor_kind(std::string_view name);

struct RegressorSpec {
  RegressorKind kind = RegressorKind::none;
  int n_estimators = 0;
  int max_depth = 0;
  double learning_rate = 0.1;  // boosting only
  bool bootstrap = true;       // forest only
  int min_samples_leaf = 1;
  int max_features = 0;  // features considered per split; 0 means all

  /// Forest: 20 trees of depth 5. Boosting: 20 stages of depth 3.
  static RegressorSpec defaults(RegressorKind kind);

  /// Throws std::invalid_argument when a count is negative or out of range.
  void validate() const;
};

/// Best axis-aligned split of a node. sse is the summed squared error of
/// the two children about their own means.
struct Split {
  int dim = -1;
  double threshold = 0.0;
  double sse = 0.0;
};

/// Exhaustive CART split search over the given rows. Thresholds are the
/// midpoints between consecutive distinct sorted feature values; ties in SSE
/// go to the lower dimension, then the lower threshold. Only dimensions in
/// `dims` are searched (all when empty). Returns nullopt when no split
/// leaves min_samples_leaf rows on both sides.
std::optional<Split> find_best_split(const Matrix& X, const Vector& y,
                                     std::span<const std::size_t> rows, int min_samples_leaf,
                                     std::span<const int> dims = {});

/// Greedy least-squares regression tree stored as a flat node array.
class RegressionTree {
 public:
  /// rows may repeat (bootstrap). max_features > 0 draws that many distinct
  /// dimensions per node from feature_rng, which must then be non-null.
  static RegressionTree fit(const Matrix& X, const Vector& y, std::span<const std::size_t> rows,
                            int max_depth, int min_samples_leaf, int max_features = 0,
                            Rng* feature_rng = nullptr);
  static RegressionTree fit(const Matrix& X, const Vector& y, int max_depth,
                            int min_samples_leaf = 1);

  double predict(const Vector& z) const;
  int depth() const;
  std::size_t leaf_count() const;
  std::size_t node_count() const { return nodes_.size(); }

  struct Node {
    int dim = -1;  // -1 for a leaf
    double value = 0.0;  // threshold for internal nodes, prediction for leaves
    int left = -1;
    int right = -1;
    int samples = 0;
  };
  std::span<const Node> nodes() const { return nodes_; }

 private:
  int grow(const Matrix& X, const Vector& y, std::vector<std::size_t>& rows, int depth,
           int max_depth, int min_samples_leaf, int max_features, Rng* feature_rng);

  std::vector<Node> nodes_;
};

struct LinearFit {
  Vector beta;
  double intercept = 0.0;

  double predict(const Vector& z) const { return intercept + beta.dot(z); }
};

/// Least squares with an unpenalized intercept and ridge damping `ridge` on
/// beta, which keeps rank-deficient designs (n <= dim) solvable.
LinearFit fit_linear(const Matrix& X, const Vector& y, double ridge = 1e-8);

/// A fitted corrective model. Prediction is a pure function of the fit.
class Regressor {
 public:
  /// A model that predicts 0 everywhere (RegressorKind::none).
  Regressor() = default;

  /// X holds normalized inputs row-wise. rng drives bootstrap resampling
  /// and feature subsampling; per-tree streams are forked from it so trees
  /// could be fit in any order.
  static Regressor fit(const Matrix& X, const Vector& y, const RegressorSpec& spec, Rng& rng);

  double predict(const Vector& z) const;

  const RegressorSpec& spec() const { return spec_; }
  std::span<const RegressionTree> trees() const { return trees_; }
  const std::optional<LinearFit>& linear() const { return linear_; }
  double base_value() const { return base_; }

 private:
  RegressorSpec spec_{};
  std::vector<RegressionTree> trees_;
  std::optional<LinearFit> linear_;
  double base_ = 0.0;
};

}  // namespace dkibo

#endif  // DKIBO_MODELS_HPP
