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

#ifndef DKIBO_BOX_BFGS_HPP
#define DKIBO_BOX_BFGS_HPP

#include <functional>
#include <optional>

#include <Eigen/Core>

namespace dkibo::detail {

struct ValueAndGradient {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

/// Returns nullopt where the objective cannot be evaluated; the line search
/// treats such points as worse than any finite value.
using SmoothObjective = std::function<std::optional<ValueAndGradient>(const Eigen::VectorXd&)>;

struct BoxAscentResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Projected BFGS ascent inside [lower, upper] with Armijo backtracking.
/// Coordinates pinned at a bound by the gradient are frozen for the step.
/// Returns nullopt if the starting point cannot be evaluated.
std::optional<BoxAscentResult> maximize_in_box(const SmoothObjective& objective,
                                               Eigen::VectorXd start,
                                               const Eigen::VectorXd& lower,
                                               const Eigen::VectorXd& upper, int max_iterations);

}  // namespace dkibo::detail

#endif  // DKIBO_BOX_BFGS_HPP
