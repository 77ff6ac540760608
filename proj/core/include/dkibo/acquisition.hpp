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

#ifndef DKIBO_ACQUISITION_HPP
#define DKIBO_ACQUISITION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>

#include "dkibo/gp.hpp"
#include "dkibo/models.hpp"
#include "dkibo/rng.hpp"
#include "dkibo/space.hpp"

namespace dkibo {

enum class AcquisitionKind { ucb, ei, poi };

std::string_view to_string(AcquisitionKind kind);
std::optional<AcquisitionKind> parse_acquisition_kind(std::string_view name);

struct AcquisitionConfig {
  AcquisitionKind kind = AcquisitionKind::ucb;
  double kappa = 2.6;
  double xi_offset = 0.0;  // EI/POI improvement offset
  double epsilon = 0.05;   // early-stop threshold
  int i_max = 100;
  bool schedule_enabled = true;

  /// Throws std::invalid_argument unless kappa > 0, epsilon > 0, i_max >= 1.
  void validate() const;
};

double ucb(double mu, double sigma, double kappa);

/// Gaussian expected improvement over y_best + offset (maximization).
/// sigma == 0 degenerates to max(mu - y_best - offset, 0).
double expected_improvement(double mu, double sigma, double y_best, double offset);

/// Phi((mu - y_best - offset) / sigma); sigma == 0 gives the indicator.
double probability_of_improvement(double mu, double sigma, double y_best, double offset);

struct GammaResult {
  double gamma = 1.0;
  bool degenerate = false;  // |sum xi| < 1e-12, gamma forced to 0
};

/// Scale of the corrective term. UCB uses 1; EI and POI use the ratio of the
/// summed acquisition to the summed corrective prediction over the initial
/// design. A vanishing denominator yields 0 and logs a warning.
GammaResult compute_gamma(AcquisitionKind kind, std::span<const double> acq_at_init,
                          std::span<const double> xi_at_init);

/// min(1, 4 i^2 / i_max^2).
double schedule_weight(int iteration, int i_max);

struct AugmentState {
  double gamma = 1.0;
  bool dropped = false;
  std::optional<int> drop_iteration;

  double effective_gamma() const { return dropped ? 0.0 : gamma; }
  /// Sets the drop flag once; later calls keep the first iteration.
  void drop(int iteration);
};

/// Base acquisition of a GP posterior at normalized z. y_best is only used
/// by EI and POI.
double base_acquisition(const GpModel& gp, const Vector& z, const AcquisitionConfig& config,
                        double y_best);

/// alpha(z) + gamma h(i) xi(z). gamma is 0 once the state has dropped and
/// h(i) is 1 when the schedule is disabled.
double augmented_acquisition(const Vector& z, const GpModel& gp, const Regressor& xi,
                             const AugmentState& state, const AcquisitionConfig& config,
                             int iteration, double y_best);

/// Movement ratio ||x_prev - x_new|| / ||x_new - mean|| < epsilon. A
/// denominator below 1e-12 counts as collapsed and returns true.
bool early_stop_check(const Vector& x_prev, const Vector& x_new, const Vector& running_mean,
                      double epsilon);

/// Same test with the running mean taken over `history`.
bool early_stop_check(const Vector& x_prev, const Vector& x_new, std::span<const Vector> history,
                      double epsilon);

struct MaximizerOptions {
  int candidates = 10000;
  int refine_starts = 10;
  int refine_evaluations = 200;
  double initial_step = 0.05;
};

using AcquisitionField = std::function<double(const Vector&)>;

/// Maximizes a scalar field over [0,1]^dim. Scores seeded uniform
/// candidates, then polishes the best few with a box-clipped Nelder-Mead.
/// Candidate ties resolve to the lower index; the result depends only on
/// the field and the rng state.
Vector maximize_acquisition(const AcquisitionField& field, std::size_t dim, Rng& rng,
                            const MaximizerOptions& options = {});

}  // namespace dkibo

#endif  // DKIBO_ACQUISITION_HPP
