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

#include "dkibo/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace dkibo {

namespace {

enum class Stream : std::uint64_t { initial = 1, gp = 2, corrective = 3, acquisition = 4, random = 5 };

Rng stream(const CampaignConfig& config, Stream purpose, int index) {
  const auto id = (static_cast<std::uint64_t>(purpose) << 32) | static_cast<std::uint32_t>(index);
  return Rng(config.seed).fork(id);
}

std::string describe(const Vector& x) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index j = 0; j < x.size(); ++j) os << (j ? ", " : "") << x[j];
  os << ')';
  return os.str();
}

double checked(const Objective& objective, const Vector& x) {
  const double y = objective(x);
  if (!std::isfinite(y))
    throw ObjectiveError("objective returned a non-finite value at x = " + describe(x), x);
  return y;
}

}  // namespace

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::dkibo: return "dkibo";
    case Variant::sbo: return "sbo";
    case Variant::random_search: return "rs";
    case Variant::linear_mean: return "linear_mean";
    case Variant::linear_mean_es: return "linear_mean_es";
  }
  return "dkibo";
}

std::optional<Variant> parse_variant(std::string_view name) {
  if (name == "dkibo") return Variant::dkibo;
  if (name == "sbo") return Variant::sbo;
  if (name == "rs" || name == "random_search") return Variant::random_search;
  if (name == "linear_mean") return Variant::linear_mean;
  if (name == "linear_mean_es") return Variant::linear_mean_es;
  return std::nullopt;
}

void CampaignConfig::validate() const {
  if (n_init < 2) throw std::invalid_argument("n_init must be >= 2");
  if (i_max < 0) throw std::invalid_argument("i_max must be >= 0");
  if (gp_restarts < 1) throw std::invalid_argument("gp_restarts must be >= 1");
  acquisition.validate();
  regressor.validate();
}

Campaign::Campaign(CampaignConfig config) : config_(std::move(config)), data_(config_.space) {
  config_.validate();
}

Campaign Campaign::restore(CampaignConfig config, std::vector<TrajectoryPoint> history,
                           std::optional<double> gamma, AugmentState augment,
                           std::optional<KernelParams> warm_start) {
  Campaign c(std::move(config));
  for (auto& p : history) c.data_.add({p.x, p.y});
  c.trajectory_ = std::move(history);
  c.gamma_ = gamma;
  c.augment_ = augment;
  c.warm_start_ = warm_start;
  return c;
}

bool Campaign::uses_corrective_term() const { return config_.variant == Variant::dkibo; }

bool Campaign::monitors_movement() const {
  return config_.variant == Variant::dkibo || config_.variant == Variant::linear_mean_es;
}

MeanMode Campaign::active_mean_mode() const {
  switch (config_.variant) {
    case Variant::linear_mean: return MeanMode::linear;
    case Variant::linear_mean_es: return augment_.dropped ? MeanMode::zero : MeanMode::linear;
    default: return config_.mean_mode;
  }
}

bool Campaign::in_initial_phase() const {
  return data_.size() < static_cast<std::size_t>(config_.n_init);
}

int Campaign::next_iteration() const {
  if (in_initial_phase()) return 0;
  return static_cast<int>(data_.size()) - config_.n_init + 1;
}

bool Campaign::complete() const {
  return data_.size() >= static_cast<std::size_t>(config_.n_init + config_.i_max);
}

std::vector<Vector> Campaign::initial_design() const {
  Rng rng = stream(config_, Stream::initial, 0);
  return sample_uniform(config_.space, static_cast<std::size_t>(config_.n_init), rng);
}

Campaign::Models Campaign::fit_models() const {
  if (data_.size() < 2) throw std::logic_error("model fit needs at least two observations");
  const int iteration = std::max(1, next_iteration());
  const Matrix X = data_.normalized_inputs();
  const Vector y = data_.targets();

  Regressor xi;
  if (uses_corrective_term()) {
    Rng xi_rng = stream(config_, Stream::corrective, iteration);
    xi = Regressor::fit(X, y, config_.regressor, xi_rng);
  }

  Rng gp_rng = stream(config_, Stream::gp, iteration);
  GpFitOptions options;
  options.restarts = config_.gp_restarts;
  options.warm_start = warm_start_;
  GpModel gp = GpModel::fit(X, y, active_mean_mode(), gp_rng, options);

  Models models{std::move(gp), std::move(xi), augment_, y.maxCoeff(), iteration, std::nullopt};
  if (uses_corrective_term()) {
    if (!gamma_) {
      // Scale from the initial design under the first fitted models.
      const auto n0 = std::min<Eigen::Index>(config_.n_init, X.rows());
      const double init_best = y.head(n0).maxCoeff();
      std::vector<double> acq, corr;
      for (Eigen::Index i = 0; i < n0; ++i) {
        const Vector z = X.row(i).transpose();
        acq.push_back(base_acquisition(models.gp, z, config_.acquisition, init_best));
        corr.push_back(models.xi.predict(z));
      }
      models.new_gamma = compute_gamma(config_.acquisition.kind, acq, corr).gamma;
    }
    models.augment.gamma = gamma_.value_or(models.new_gamma.value_or(0.0));
  } else {
    models.augment.gamma = 0.0;
  }
  return models;
}

double Campaign::acquisition_value(const Models& models, const Vector& z) const {
  AcquisitionConfig acq = config_.acquisition;
  acq.i_max = std::max(1, config_.i_max);
  if (uses_corrective_term())
    return augmented_acquisition(z, models.gp, models.xi, models.augment, acq, models.iteration,
                                 models.y_best);
  return base_acquisition(models.gp, z, acq, models.y_best);
}

Campaign::Proposal Campaign::propose() const {
  Proposal p;
  if (in_initial_phase()) {
    p.x = initial_design()[data_.size()];
    p.iteration = 0;
    return p;
  }
  p.iteration = next_iteration();
  if (config_.variant == Variant::random_search) {
    Rng rng = stream(config_, Stream::random, p.iteration);
    p.x = sample_uniform(config_.space, 1, rng).front();
    return p;
  }

  const Models models = fit_models();
  p.gp_params = models.gp.params();
  p.gamma = models.new_gamma;
  Rng acq_rng = stream(config_, Stream::acquisition, p.iteration);
  const Vector z = maximize_acquisition(
      [&](const Vector& v) { return acquisition_value(models, v); }, config_.space.dim(), acq_rng,
      config_.maximizer);
  p.x = config_.space.denormalize(z);
  return p;
}

void Campaign::append(const Vector& x, double y, int iteration,
                      std::optional<KernelParams> gp_params, std::optional<double> gamma,
                      double seconds) {
  data_.add({x, y});
  if (gp_params) warm_start_ = gp_params;
  if (gamma && !gamma_) gamma_ = gamma;

  if (iteration > 0 && uses_corrective_term() && !augment_.dropped) augment_.gamma = *gamma_;

  // Movement test after probing: the two latest suggestions against the mean
  // of everything sampled before the newest one.
  if (iteration >= 2 && monitors_movement() && !augment_.dropped) {
    const std::size_t n = data_.size();
    std::vector<Vector> history;
    history.reserve(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) history.push_back(config_.space.normalize(data_[k].x));
    const Vector x_new = config_.space.normalize(data_[n - 1].x);
    if (early_stop_check(history.back(), x_new, history, config_.acquisition.epsilon))
      augment_.drop(iteration);
  }

  TrajectoryPoint point;
  point.x = x;
  point.y = y;
  point.iteration = iteration;
  point.initial = iteration == 0;
  point.gamma = (iteration > 0 && uses_corrective_term()) ? augment_.effective_gamma() : 0.0;
  point.dropped = augment_.dropped;
  point.seconds = seconds;
  trajectory_.push_back(std::move(point));
}

void Campaign::commit(const Proposal& proposal, double y) {
  append(proposal.x, y, proposal.iteration, proposal.gp_params, proposal.gamma, 0.0);
}

void Campaign::observe(const Vector& x, double y) {
  if (!config_.space.contains(x)) throw std::out_of_range("observation lies outside the search space");
  if (!std::isfinite(y)) throw std::invalid_argument("observation value is not finite");
  if (in_initial_phase() || config_.variant == Variant::random_search) {
    append(x, y, next_iteration(), std::nullopt, std::nullopt, 0.0);
    return;
  }
  const Models models = fit_models();
  append(x, y, models.iteration, models.gp.params(), models.new_gamma, 0.0);
}

CampaignResult Campaign::result() const {
  CampaignResult r;
  r.variant = config_.variant;
  r.seed = config_.seed;
  r.trajectory = trajectory_;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : trajectory_) {
    best = std::max(best, p.y);
    r.best_y.push_back(best);
    if (!p.initial) r.gamma_history.push_back(p.gamma);
  }
  r.drop_iteration = augment_.drop_iteration;
  return r;
}

namespace {

CampaignResult drive(Campaign campaign, const Objective& objective) {
  std::vector<double> seconds;
  while (!campaign.complete()) {
    const auto start = std::chrono::steady_clock::now();
    auto proposal = campaign.propose();
    const double y = checked(objective, proposal.x);
    campaign.commit(proposal, y);
    seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  CampaignResult r = campaign.result();
  for (std::size_t k = 0; k < seconds.size(); ++k) r.trajectory[k].seconds = seconds[k];
  return r;
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& config, const Objective& objective) {
  return drive(Campaign(config), objective);
}

CampaignResult run_random_search(const CampaignConfig& config, const Objective& objective) {
  CampaignConfig rs = config;
  rs.variant = Variant::random_search;
  return drive(Campaign(std::move(rs)), objective);
}

AblationResult run_linear_mean_ablation(const CampaignConfig& config, const Objective& objective) {
  CampaignConfig linear = config;
  linear.variant = Variant::linear_mean;
  CampaignConfig es = config;
  es.variant = Variant::linear_mean_es;
  CampaignConfig dk = config;
  dk.variant = Variant::dkibo;
  dk.mean_mode = MeanMode::zero;
  dk.regressor = RegressorSpec::defaults(RegressorKind::linear);
  return {run_campaign(linear, objective), run_campaign(es, objective),
          run_campaign(dk, objective)};
}

}  // namespace dkibo
