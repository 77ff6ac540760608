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

#include "dkibo/gp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "box_bfgs.hpp"

namespace dkibo {

namespace {

constexpr double kSqrt5 = 2.23606797749978969641;
constexpr double kLog2Pi = 1.83787706640934548356;
constexpr double kFirstJitter = 1e-10;
constexpr double kMaxJitter = 1e-4;
constexpr double kMinScale = 1e-12;

Matrix pairwise_distances(const Matrix& X) {
  const Eigen::Index n = X.rows();
  Matrix R(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    R(i, i) = 0.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double r = (X.row(i) - X.row(j)).norm();
      R(i, j) = r;
      R(j, i) = r;
    }
  }
  return R;
}

Matrix signal_covariance(const Matrix& R, const KernelParams& p) {
  return R.unaryExpr([&p](double r) { return matern52(r, p); });
}

struct Factorization {
  Eigen::LLT<Matrix> llt;
  double jitter = 0.0;
};

// Factorizes K + (noise + jitter) I, raising the jitter tenfold per failure.
Factorization factorize(const Matrix& K, double noise) {
  for (double jitter = kFirstJitter; jitter <= kMaxJitter * 1.0000001; jitter *= 10.0) {
    Matrix A = K;
    A.diagonal().array() += noise + jitter;
    Eigen::LLT<Matrix> llt(A);
    if (llt.info() == Eigen::Success && llt.matrixLLT().diagonal().minCoeff() > 0.0) {
      return {std::move(llt), jitter};
    }
  }
  throw FitError("covariance matrix is not positive definite even with jitter " +
                 std::to_string(kMaxJitter) + " (duplicate or near-duplicate inputs with noise " +
                 std::to_string(noise) + ")");
}

LmlValue lml_from_distances(const Matrix& R, const Vector& y, const KernelParams& p) {
  const Eigen::Index n = R.rows();
  const double sf2 = p.signal_variance;

  // K and the lower triangle of dK/dlog(length_scale).
  Matrix Kf(n, n);
  Matrix Dl(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      const double s = kSqrt5 * R(i, j) / p.length_scale;
      const double e = std::exp(-s);
      Kf(i, j) = Kf(j, i) = sf2 * (1.0 + s + s * s / 3.0) * e;
      Dl(i, j) = sf2 * s * s * (1.0 + s) / 3.0 * e;
    }
  }

  auto [llt, jitter] = factorize(Kf, p.noise_variance);
  const Vector alpha = llt.solve(y);

  LmlValue out;
  out.jitter = jitter;
  const double log_det_half = llt.matrixLLT().diagonal().array().log().sum();
  out.value = -0.5 * y.dot(alpha) - log_det_half - 0.5 * static_cast<double>(n) * kLog2Pi;

  Matrix Kinv = Matrix::Identity(n, n);
  llt.solveInPlace(Kinv);

  // d LML / d theta = 1/2 tr((alpha alpha^T - K^-1) dK/dtheta), summed over
  // the lower triangle with off-diagonal terms counted twice.
  double g_length = 0.0, g_signal = 0.0, trace = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double wd = alpha[j] * alpha[j] - Kinv(j, j);
    g_length += wd * Dl(j, j);
    g_signal += wd * Kf(j, j);
    trace += wd;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double w = 2.0 * (alpha[i] * alpha[j] - Kinv(i, j));
      g_length += w * Dl(i, j);
      g_signal += w * Kf(i, j);
    }
  }
  out.gradient[0] = 0.5 * g_length;
  out.gradient[1] = 0.5 * g_signal;
  out.gradient[2] = 0.5 * p.noise_variance * trace;
  return out;
}

struct Prepared {
  double mean = 0.0;
  double scale = 1.0;
  std::optional<LinearFit> line;
  Vector residual;
};

Prepared prepare_targets(const Matrix& X, const Vector& y, MeanMode mode) {
  Prepared p;
  const double n = static_cast<double>(y.size());
  p.mean = y.mean();
  const double var = (y.array() - p.mean).square().sum() / n;
  const double sd = std::sqrt(var);
  p.scale = sd < kMinScale ? 1.0 : sd;
  Vector standardized = (y.array() - p.mean) / p.scale;
  if (mode == MeanMode::linear) {
    p.line = fit_linear(X, standardized);
    for (Eigen::Index i = 0; i < X.rows(); ++i)
      standardized[i] -= p.line->predict(X.row(i).transpose());
  }
  p.residual = std::move(standardized);
  return p;
}

KernelParams from_log(const Eigen::VectorXd& theta) {
  return {std::exp(theta[0]), std::exp(theta[1]), std::exp(theta[2])};
}

Eigen::VectorXd to_log(const KernelParams& p) {
  Eigen::VectorXd t(3);
  t << std::log(p.length_scale), std::log(p.signal_variance), std::log(p.noise_variance);
  return t;
}

}  // namespace

std::string_view to_string(MeanMode mode) { return mode == MeanMode::linear ? "linear" : "zero"; }

std::optional<MeanMode> parse_mean_mode(std::string_view name) {
  if (name == "zero") return MeanMode::zero;
  if (name == "linear") return MeanMode::linear;
  return std::nullopt;
}

double matern52(double r, const KernelParams& params) {
  const double s = kSqrt5 * r / params.length_scale;
  return params.signal_variance * (1.0 + s + s * s / 3.0) * std::exp(-s);
}

LmlValue log_marginal_likelihood(const Matrix& X, const Vector& y, const KernelParams& params) {
  return lml_from_distances(pairwise_distances(X), y, params);
}

GpModel GpModel::fit(const Matrix& X, const Vector& y, MeanMode mean_mode, Rng& rng,
                     const GpFitOptions& options) {
  if (X.rows() < 2) throw std::invalid_argument("GP fit needs at least two observations");
  if (X.rows() != y.size()) throw std::invalid_argument("GP inputs and targets differ in length");

  const Prepared prep = prepare_targets(X, y, mean_mode);
  const Matrix R = pairwise_distances(X);

  Eigen::VectorXd lower(3), upper(3);
  lower << std::log(KernelBounds::min_length_scale), std::log(KernelBounds::min_signal_variance),
      std::log(KernelBounds::min_noise_variance);
  upper << std::log(KernelBounds::max_length_scale), std::log(KernelBounds::max_signal_variance),
      std::log(KernelBounds::max_noise_variance);

  const detail::SmoothObjective objective =
      [&](const Eigen::VectorXd& theta) -> std::optional<detail::ValueAndGradient> {
    try {
      const LmlValue v = lml_from_distances(R, prep.residual, from_log(theta));
      if (!std::isfinite(v.value)) return std::nullopt;
      detail::ValueAndGradient out;
      out.value = v.value;
      out.gradient = Eigen::Map<const Eigen::Vector3d>(v.gradient.data());
      return out;
    } catch (const FitError& e) {
      return std::nullopt;
    }
  };

  std::optional<detail::BoxAscentResult> best;
  const int restarts = std::max(1, options.restarts);
  for (int k = 0; k < restarts; ++k) {
    Eigen::VectorXd start(3);
    if (k == 0) {
      start = to_log(options.warm_start.value_or(KernelParams{}));
    } else {
      for (Eigen::Index j = 0; j < 3; ++j) start[j] = rng.uniform(lower[j], upper[j]);
    }
    auto result = detail::maximize_in_box(objective, start, lower, upper, options.max_iterations);
    if (result && (!best || result->value > best->value)) best = std::move(result);
  }
  if (!best) throw FitError("no hyperparameter start produced a factorizable covariance");

  return condition(X, y, mean_mode, from_log(best->x));
}

GpModel GpModel::fit(const Dataset& data, MeanMode mean_mode, Rng& rng,
                     const GpFitOptions& options) {
  return fit(data.normalized_inputs(), data.targets(), mean_mode, rng, options);
}

GpModel GpModel::condition(const Matrix& X, const Vector& y, MeanMode mean_mode,
                           const KernelParams& params) {
  if (X.rows() < 1) throw std::invalid_argument("GP needs at least one observation");
  Prepared prep = prepare_targets(X, y, mean_mode);
  const Matrix R = pairwise_distances(X);
  auto [llt, jitter] = factorize(signal_covariance(R, params), params.noise_variance);

  GpModel model;
  model.mean_mode_ = mean_mode;
  model.params_ = params;
  model.line_ = std::move(prep.line);
  model.X_ = X;
  model.alpha_ = llt.solve(prep.residual);
  model.chol_ = llt.matrixL();
  model.chol_inv_ = Matrix::Identity(X.rows(), X.rows());
  model.chol_.triangularView<Eigen::Lower>().solveInPlace(model.chol_inv_);
  model.y_mean_ = prep.mean;
  model.y_scale_ = prep.scale;
  model.jitter_ = jitter;
  model.lml_ = -0.5 * prep.residual.dot(model.alpha_) -
               llt.matrixLLT().diagonal().array().log().sum() -
               0.5 * static_cast<double>(X.rows()) * kLog2Pi;
  return model;
}

GpModel::Prediction GpModel::predict(const Vector& z) const {
  const Eigen::Index n = X_.rows();
  Vector k(n);
  for (Eigen::Index i = 0; i < n; ++i) k[i] = matern52((X_.row(i) - z.transpose()).norm(), params_);

  double mean = k.dot(alpha_);
  if (line_) mean += line_->predict(z);
  const Vector v = chol_inv_.triangularView<Eigen::Lower>() * k;
  const double var = std::max(0.0, params_.signal_variance - v.squaredNorm());
  return {y_mean_ + y_scale_ * mean, y_scale_ * std::sqrt(var)};
}

std::optional<LinearFit> GpModel::linear_mean() const {
  if (!line_) return std::nullopt;
  LinearFit out;
  out.beta = line_->beta * y_scale_;
  out.intercept = line_->intercept * y_scale_ + y_mean_;
  return out;
}

}  // namespace dkibo
