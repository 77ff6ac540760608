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

#ifndef DKIBO_OPTIMIZER_HPP
#define DKIBO_OPTIMIZER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dkibo/acquisition.hpp"
#include "dkibo/gp.hpp"
#include "dkibo/models.hpp"
#include "dkibo/space.hpp"

namespace dkibo {

/// dkibo: GP acquisition plus the scheduled corrective term with early drop.
/// sbo: the same loop without any corrective term.
/// random_search: uniform sampling after the shared initial design.
/// linear_mean: sbo with a least-squares linear GP prior mean.
/// linear_mean_es: linear_mean until the early-stop test fires, zero mean after.
enum class Variant { dkibo, sbo, random_search, linear_mean, linear_mean_es };

std::string_view to_string(Variant variant);
std::optional<Variant> parse_variant(std::string_view name);

struct CampaignConfig {
  SearchSpace space;
  Variant variant = Variant::dkibo;
  AcquisitionConfig acquisition{};
  RegressorSpec regressor = RegressorSpec::defaults(RegressorKind::random_forest);
  MeanMode mean_mode = MeanMode::zero;  // dkibo and sbo only
  int n_init = 5;
  int i_max = 100;
  std::uint64_t seed = 0;
  int gp_restarts = 5;
  MaximizerOptions maximizer{};

  /// Throws std::invalid_argument: n_init >= 2, i_max >= 0, plus the
  /// acquisition and regressor checks.
  void validate() const;
};

/// Objective in the maximization convention, evaluated in original units.
using Objective = std::function<double(const Vector&)>;

/// The objective returned a non-finite value.
class ObjectiveError : public std::runtime_error {
 public:
  ObjectiveError(const std::string& what, Vector x) : std::runtime_error(what), x_(std::move(x)) {}
  const Vector& x() const { return x_; }

 private:
  Vector x_;
};

struct TrajectoryPoint {
  Vector x;
  double y = 0.0;
  int iteration = 0;  // 0 for the initial design, then 1, 2, ...
  bool initial = false;
  double gamma = 0.0;  // effective corrective scale after this step's drop test
  bool dropped = false;
  double seconds = 0.0;  // wall clock spent proposing and evaluating
};

struct CampaignResult {
  Variant variant = Variant::dkibo;
  std::uint64_t seed = 0;
  std::vector<TrajectoryPoint> trajectory;
  std::vector<double> best_y;         // running maximum, one per evaluation
  std::vector<double> gamma_history;  // one per BO iteration
  std::optional<int> drop_iteration;
};

/// One optimization run as an ask/tell state machine.
///
/// The first n_init proposals replay a seeded uniform design shared by every
/// variant with the same seed. Each later proposal refits the corrective
/// model and the GP on all observations and maximizes the acquisition.
/// Every random draw comes from a stream forked off the seed by purpose and
/// iteration, so proposals are a pure function of the observations.
class Campaign {
 public:
  struct Proposal {
    Vector x;  // original units
    int iteration = 0;
    std::optional<KernelParams> gp_params;
    std::optional<double> gamma;  // set by the proposal that first computes gamma
  };

  explicit Campaign(CampaignConfig config);

  /// Rebuilds a campaign from persisted state.
  static Campaign restore(CampaignConfig config, std::vector<TrajectoryPoint> history,
                          std::optional<double> gamma, AugmentState augment,
                          std::optional<KernelParams> warm_start);

  Proposal propose() const;
  /// Records the objective value for a proposal returned by propose().
  void commit(const Proposal& proposal, double y);
  /// Records an observation at an arbitrary in-bounds x.
  void observe(const Vector& x, double y);

  const CampaignConfig& config() const { return config_; }
  const Dataset& data() const { return data_; }
  const std::vector<TrajectoryPoint>& trajectory() const { return trajectory_; }
  const AugmentState& augment() const { return augment_; }
  const std::optional<double>& gamma() const { return gamma_; }
  const std::optional<KernelParams>& warm_start() const { return warm_start_; }
  MeanMode active_mean_mode() const;

  int next_iteration() const;
  bool in_initial_phase() const;
  bool complete() const;

  CampaignResult result() const;

  /// Models behind the next proposal, exposed for surface dumps.
  struct Models {
    GpModel gp;
    Regressor xi;
    AugmentState augment;
    double y_best = 0.0;
    int iteration = 0;
    std::optional<double> new_gamma;
  };
  Models fit_models() const;
  /// Acquisition used by the next proposal at normalized z.
  double acquisition_value(const Models& models, const Vector& z) const;

 private:
  bool uses_corrective_term() const;
  bool monitors_movement() const;
  std::vector<Vector> initial_design() const;
  void append(const Vector& x, double y, int iteration, std::optional<KernelParams> gp_params,
              std::optional<double> gamma, double seconds);

  CampaignConfig config_;
  Dataset data_;
  std::vector<TrajectoryPoint> trajectory_;
  std::optional<double> gamma_;
  AugmentState augment_{0.0, false, std::nullopt};
  std::optional<KernelParams> warm_start_;
};

/// Runs the full loop: n_init design points, then i_max model-guided steps.
/// Throws ObjectiveError when the objective returns a non-finite value.
CampaignResult run_campaign(const CampaignConfig& config, const Objective& objective);

/// Shares the initial design with run_campaign, then samples uniformly.
CampaignResult run_random_search(const CampaignConfig& config, const Objective& objective);

struct AblationResult {
  CampaignResult linear_mean;
  CampaignResult linear_mean_es;
  CampaignResult dkibo;
};

/// Linear prior mean throughout, linear mean swapped to zero mean at the
/// early-stop event, and dkibo with a linear corrective model; one seed.
AblationResult run_linear_mean_ablation(const CampaignConfig& config, const Objective& objective);

}  // namespace dkibo

#endif  // DKIBO_OPTIMIZER_HPP
