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

#ifndef DKIBO_GP_HPP
#define DKIBO_GP_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string_view>

#include <Eigen/Core>

#include "dkibo/models.hpp"
#include "dkibo/rng.hpp"
#include "dkibo/space.hpp"

namespace dkibo {

/// Matern-5/2 hyperparameters. Distances are measured in normalized
/// coordinates, so the length scale is relative to the box edge.
struct KernelParams {
  double length_scale = 0.5;
  double signal_variance = 1.0;
  double noise_variance = 1e-4;

  bool operator==(const KernelParams&) const = default;
};

/// Search bounds (inclusive) for the hyperparameters.
struct KernelBounds {
  static constexpr double min_length_scale = 1e-5;
  static constexpr double max_length_scale = 1e5;
  static constexpr double min_signal_variance = 1e-6;
  static constexpr double max_signal_variance = 1e6;
  static constexpr double min_noise_variance = 1e-10;
  static constexpr double max_noise_variance = 1e1;
};

enum class MeanMode { zero, linear };

std::string_view to_string(MeanMode mode);
std::optional<MeanMode> parse_mean_mode(std::string_view name);

/// Raised when K + noise I cannot be factorized even at the largest jitter.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sigma_f^2 (1 + sqrt5 r/l + 5 r^2 / (3 l^2)) exp(-sqrt5 r/l).
double matern52(double r, const KernelParams& params);

/// Log marginal likelihood and its gradient with respect to
/// (log l, log sigma_f^2, log sigma_n^2).
struct LmlValue {
  double value = 0.0;
  std::array<double, 3> gradient{};
  double jitter = 0.0;  // diagonal jitter that made the factorization succeed
};

/// Zero-mean LML of targets y at normalized inputs X (one row per point).
/// The caller has already removed any mean function from y.
LmlValue log_marginal_likelihood(const Matrix& X, const Vector& y, const KernelParams& params);

struct GpFitOptions {
  /// Total local ascents: one from the warm start plus restarts - 1 seeded
  /// log-uniform draws inside KernelBounds.
  int restarts = 5;
  std::optional<KernelParams> warm_start;
  int max_iterations = 100;
};

/// Exact GP regression on standardized targets.
///
/// Targets are standardized with the dataset mean and standard deviation
/// (a standard deviation below 1e-12 is replaced by 1). With MeanMode::linear
/// an ordinary least squares line is fit to the standardized targets first
/// and the GP models the residuals; the line is not re-estimated inside the
/// likelihood. Predictions are mapped back to objective units.
class GpModel {
 public:
  struct Prediction {
    double mean = 0.0;
    double stddev = 0.0;
  };

  /// Maximizes the LML over the hyperparameters, then conditions on the data.
  /// Requires at least two rows. Throws FitError on conditioning failure.
  static GpModel fit(const Matrix& X, const Vector& y, MeanMode mean_mode, Rng& rng,
                     const GpFitOptions& options = {});
  static GpModel fit(const Dataset& data, MeanMode mean_mode, Rng& rng,
                     const GpFitOptions& options = {});

  /// Conditions on the data with fixed hyperparameters (no search).
  static GpModel condition(const Matrix& X, const Vector& y, MeanMode mean_mode,
                           const KernelParams& params);

  /// Posterior of the latent function at a normalized point, in objective
  /// units. Negative variances from rounding are clamped to 0.
  Prediction predict(const Vector& z) const;

  const KernelParams& params() const { return params_; }
  MeanMode mean_mode() const { return mean_mode_; }
  /// Linear mean in objective units (beta per normalized coordinate).
  std::optional<LinearFit> linear_mean() const;
  double log_marginal_likelihood() const { return lml_; }
  double jitter() const { return jitter_; }
  const Matrix& cholesky_factor() const { return chol_; }
  const Matrix& train_inputs() const { return X_; }
  double y_mean() const { return y_mean_; }
  double y_scale() const { return y_scale_; }

 private:
  MeanMode mean_mode_ = MeanMode::zero;
  KernelParams params_{};
  std::optional<LinearFit> line_;  // in standardized units
  Matrix X_;
  Matrix chol_;      // lower factor of K + (noise + jitter) I
  Matrix chol_inv_;  // its inverse, for cheap predictive variances
  Vector alpha_;
  double y_mean_ = 0.0;
  double y_scale_ = 1.0;
  double lml_ = 0.0;
  double jitter_ = 0.0;
};

}  // namespace dkibo

#endif  // DKIBO_GP_HPP
