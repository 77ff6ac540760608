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

#include "box_bfgs.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace dkibo::detail {

namespace {

constexpr double kGradTol = 1e-5;
constexpr double kRelImprovementTol = 1e-9;
constexpr double kArmijo = 1e-4;
constexpr double kMaxStep = 3.0;
constexpr int kMaxHalvings = 30;
constexpr double kMinStep = 1e-9;

}  // namespace

std::optional<BoxAscentResult> maximize_in_box(const SmoothObjective& objective,
                                               Eigen::VectorXd start,
                                               const Eigen::VectorXd& lower,
                                               const Eigen::VectorXd& upper, int max_iterations) {
  const Eigen::Index n = start.size();
  Eigen::VectorXd x = start.cwiseMax(lower).cwiseMin(upper);
  auto current = objective(x);
  if (!current) return std::nullopt;

  BoxAscentResult result;
  result.evaluations = 1;
  double f = current->value;
  Eigen::VectorXd g = current->gradient;
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);

  for (int it = 0; it < max_iterations; ++it) {
    result.iterations = it + 1;
    Eigen::VectorXd pg = g;
    for (Eigen::Index j = 0; j < n; ++j) {
      if ((x[j] <= lower[j] && g[j] < 0.0) || (x[j] >= upper[j] && g[j] > 0.0)) pg[j] = 0.0;
    }
    if (pg.lpNorm<Eigen::Infinity>() < kGradTol) {
      result.converged = true;
      break;
    }

    // Quasi-Newton step on the free coordinates only; active bounds stay put.
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (pg[i] == 0.0) continue;
      for (Eigen::Index j = 0; j < n; ++j)
        if (pg[j] != 0.0) d[i] += H(i, j) * g[j];
    }
    if (d.dot(pg) <= 0.0) {
      H.setIdentity();
      d = pg;
    }
    const double dmax = d.lpNorm<Eigen::Infinity>();
    if (dmax > kMaxStep) d *= kMaxStep / dmax;

    double t = 1.0;
    std::optional<ValueAndGradient> next;
    Eigen::VectorXd xn;
    for (int ls = 0; ls < kMaxHalvings; ++ls, t *= 0.5) {
      xn = (x + t * d).cwiseMax(lower).cwiseMin(upper);
      const Eigen::VectorXd step = xn - x;
      if (step.lpNorm<Eigen::Infinity>() < kMinStep) break;
      auto trial = objective(xn);
      ++result.evaluations;
      if (trial && std::isfinite(trial->value) && trial->value >= f + kArmijo * g.dot(step)) {
        next = std::move(trial);
        break;
      }
    }
    if (!next) {
      result.converged = true;
      break;
    }

    const Eigen::VectorXd s = xn - x;
    const Eigen::VectorXd yv = g - next->gradient;  // gradient change of -f
    const double sy = s.dot(yv);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
      H = (I - rho * s * yv.transpose()) * H * (I - rho * yv * s.transpose()) +
          rho * s * s.transpose();
    }
    const double improvement = next->value - f;
    x = xn;
    f = next->value;
    g = next->gradient;
    if (improvement < kRelImprovementTol * (1.0 + std::abs(f))) {
      result.converged = true;
      break;
    }
  }
  result.x = x;
  result.value = f;
  return result;
}

}  // namespace dkibo::detail
