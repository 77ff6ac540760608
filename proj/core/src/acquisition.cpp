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

#include "dkibo/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <spdlog/spdlog.h>

namespace dkibo {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }
double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double finite_or_lowest(double v) {
  return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
}

struct Vertex {
  Vector z;
  double value;  // field value, maximized
};

// Nelder-Mead on [0,1]^d with every trial point clipped into the box.
Vertex nelder_mead(const AcquisitionField& field, const Vector& start, double step, int budget) {
  const Eigen::Index d = start.size();
  auto eval = [&](Vector z) {
    z = z.cwiseMax(0.0).cwiseMin(1.0);
    const double v = finite_or_lowest(field(z));
    return Vertex{std::move(z), v};
  };

  std::vector<Vertex> simplex;
  simplex.reserve(static_cast<std::size_t>(d + 1));
  simplex.push_back(eval(start));
  int used = 1;
  for (Eigen::Index j = 0; j < d && used < budget; ++j) {
    Vector z = start;
    z[j] += (z[j] + step <= 1.0) ? step : -step;
    simplex.push_back(eval(z));
    ++used;
  }
  auto best_of = [&] {
    return *std::max_element(simplex.begin(), simplex.end(),
                             [](const Vertex& a, const Vertex& b) { return a.value < b.value; });
  };
  if (static_cast<Eigen::Index>(simplex.size()) < d + 1) return best_of();

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.value > b.value; };
  while (used < budget) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    const Vertex& best = simplex.front();
    Vertex& worst = simplex.back();
    double spread = 0.0;
    for (const auto& v : simplex) spread = std::max(spread, (v.z - best.z).lpNorm<Eigen::Infinity>());
    if (spread < 1e-9 || best.value - worst.value <= 1e-14 * (1.0 + std::abs(best.value))) break;

    Vector centroid = Vector::Zero(d);
    for (std::size_t i = 0; i + 1 < simplex.size(); ++i) centroid += simplex[i].z;
    centroid /= static_cast<double>(d);

    Vertex reflected = eval(centroid + (centroid - worst.z));
    ++used;
    if (reflected.value > best.value) {
      if (used < budget) {
        Vertex expanded = eval(centroid + 2.0 * (centroid - worst.z));
        ++used;
        worst = expanded.value > reflected.value ? std::move(expanded) : std::move(reflected);
      } else {
        worst = std::move(reflected);
      }
      continue;
    }
    if (reflected.value > simplex[simplex.size() - 2].value) {
      worst = std::move(reflected);
      continue;
    }
    if (used >= budget) break;
    const bool outside = reflected.value > worst.value;
    Vertex contracted = outside ? eval(centroid + 0.5 * (reflected.z - centroid))
                                : eval(centroid + 0.5 * (worst.z - centroid));
    ++used;
    if (outside ? contracted.value >= reflected.value : contracted.value > worst.value) {
      worst = std::move(contracted);
      continue;
    }
    for (std::size_t i = 1; i < simplex.size() && used < budget; ++i) {
      simplex[i] = eval(simplex.front().z + 0.5 * (simplex[i].z - simplex.front().z));
      ++used;
    }
  }
  return best_of();
}

}  // namespace

std::string_view to_string(AcquisitionKind kind) {
  switch (kind) {
    case AcquisitionKind::ucb: return "ucb";
    case AcquisitionKind::ei: return "ei";
    case AcquisitionKind::poi: return "poi";
  }
  return "ucb";
}

std::optional<AcquisitionKind> parse_acquisition_kind(std::string_view name) {
  if (name == "ucb" || name == "UCB") return AcquisitionKind::ucb;
  if (name == "ei" || name == "EI") return AcquisitionKind::ei;
  if (name == "poi" || name == "POI" || name == "pi") return AcquisitionKind::poi;
  return std::nullopt;
}

void AcquisitionConfig::validate() const {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be > 0");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon must be > 0");
  if (i_max < 1) throw std::invalid_argument("i_max must be >= 1");
  if (!std::isfinite(xi_offset)) throw std::invalid_argument("xi_offset must be finite");
}

double ucb(double mu, double sigma, double kappa) { return mu + kappa * sigma; }

double expected_improvement(double mu, double sigma, double y_best, double offset) {
  const double gain = mu - y_best - offset;
  if (sigma <= 0.0) return std::max(gain, 0.0);
  const double z = gain / sigma;
  return gain * normal_cdf(z) + sigma * normal_pdf(z);
}

double probability_of_improvement(double mu, double sigma, double y_best, double offset) {
  const double gain = mu - y_best - offset;
  if (sigma <= 0.0) return gain > 0.0 ? 1.0 : 0.0;
  return normal_cdf(gain / sigma);
}

GammaResult compute_gamma(AcquisitionKind kind, std::span<const double> acq_at_init,
                          std::span<const double> xi_at_init) {
  if (kind == AcquisitionKind::ucb) return {1.0, false};
  const double num = std::accumulate(acq_at_init.begin(), acq_at_init.end(), 0.0);
  const double den = std::accumulate(xi_at_init.begin(), xi_at_init.end(), 0.0);
  if (std::abs(den) < 1e-12) {
    spdlog::warn("corrective model sums to {} over the initial design; gamma set to 0", den);
    return {0.0, true};
  }
  const double gamma = num / den;
  if (gamma < 0.0) spdlog::debug("negative corrective scale gamma = {}", gamma);
  return {gamma, false};
}

double schedule_weight(int iteration, int i_max) {
  if (iteration <= 0) return 0.0;
  const double i = iteration;
  const double m = i_max;
  return std::min(1.0, 4.0 * i * i / (m * m));
}

void AugmentState::drop(int iteration) {
  if (dropped) return;
  dropped = true;
  drop_iteration = iteration;
}

double base_acquisition(const GpModel& gp, const Vector& z, const AcquisitionConfig& config,
                        double y_best) {
  const auto [mu, sigma] = gp.predict(z);
  switch (config.kind) {
    case AcquisitionKind::ucb: return ucb(mu, sigma, config.kappa);
    case AcquisitionKind::ei: return expected_improvement(mu, sigma, y_best, config.xi_offset);
    case AcquisitionKind::poi:
      return probability_of_improvement(mu, sigma, y_best, config.xi_offset);
  }
  return mu;
}

double augmented_acquisition(const Vector& z, const GpModel& gp, const Regressor& xi,
                             const AugmentState& state, const AcquisitionConfig& config,
                             int iteration, double y_best) {
  const double base = base_acquisition(gp, z, config, y_best);
  const double gamma = state.effective_gamma();
  if (gamma == 0.0) return base;
  const double weight = config.schedule_enabled ? schedule_weight(iteration, config.i_max) : 1.0;
  if (weight == 0.0) return base;
  return base + gamma * weight * xi.predict(z);
}

bool early_stop_check(const Vector& x_prev, const Vector& x_new, const Vector& running_mean,
                      double epsilon) {
  const double den = (x_new - running_mean).norm();
  if (den < 1e-12) return true;
  return (x_prev - x_new).norm() / den < epsilon;
}

bool early_stop_check(const Vector& x_prev, const Vector& x_new, std::span<const Vector> history,
                      double epsilon) {
  if (history.empty()) throw std::invalid_argument("early stop needs at least one prior point");
  Vector mean = Vector::Zero(x_new.size());
  for (const auto& x : history) mean += x;
  mean /= static_cast<double>(history.size());
  return early_stop_check(x_prev, x_new, mean, epsilon);
}

Vector maximize_acquisition(const AcquisitionField& field, std::size_t dim, Rng& rng,
                            const MaximizerOptions& options) {
  if (dim == 0) throw std::invalid_argument("acquisition maximization needs dim >= 1");
  const auto d = static_cast<Eigen::Index>(dim);
  const int n_cand = std::max(1, options.candidates);

  Matrix candidates(d, n_cand);
  std::vector<double> values(static_cast<std::size_t>(n_cand));
  for (int c = 0; c < n_cand; ++c) {
    for (Eigen::Index j = 0; j < d; ++j) candidates(j, c) = rng.uniform();
    values[static_cast<std::size_t>(c)] = finite_or_lowest(field(candidates.col(c)));
  }

  std::vector<int> order(static_cast<std::size_t>(n_cand));
  std::iota(order.begin(), order.end(), 0);
  const int k = std::clamp(options.refine_starts, 1, n_cand);
  std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](int a, int b) {
    const double va = values[static_cast<std::size_t>(a)];
    const double vb = values[static_cast<std::size_t>(b)];
    return va != vb ? va > vb : a < b;
  });

  Vector best_z = candidates.col(order.front());
  double best_value = values[static_cast<std::size_t>(order.front())];
  for (int r = 0; r < k; ++r) {
    const int c = order[static_cast<std::size_t>(r)];
    if (options.refine_evaluations <= 0) break;
    Vertex polished =
        nelder_mead(field, candidates.col(c), options.initial_step, options.refine_evaluations);
    if (polished.value > best_value) {
      best_value = polished.value;
      best_z = std::move(polished.z);
    }
  }
  return best_z;
}

}  // namespace dkibo
