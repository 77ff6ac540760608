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

#include "dkibo/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dkibo {

SearchSpace::SearchSpace(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw std::invalid_argument("search space needs at least one dimension");
  if (lower_.size() != upper_.size())
    throw std::invalid_argument("lower and upper bounds differ in length");
  for (std::size_t j = 0; j < lower_.size(); ++j) {
    if (!std::isfinite(lower_[j]) || !std::isfinite(upper_[j]) || !(lower_[j] < upper_[j])) {
      throw std::invalid_argument("bounds of dimension " + std::to_string(j) +
                                  " must be finite with lower < upper");
    }
  }
}

bool SearchSpace::contains(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != dim()) return false;
  for (std::size_t j = 0; j < dim(); ++j) {
    const auto v = x[static_cast<Eigen::Index>(j)];
    if (!(v >= lower_[j] && v <= upper_[j])) return false;
  }
  return true;
}

Vector SearchSpace::normalize(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != dim())
    throw std::out_of_range("point has dimension " + std::to_string(x.size()) + ", expected " +
                            std::to_string(dim()));
  if (!contains(x)) throw std::out_of_range("point lies outside the search space");
  Vector z(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const auto u = static_cast<std::size_t>(j);
    z[j] = (x[j] - lower_[u]) / (upper_[u] - lower_[u]);
  }
  return z;
}

Vector SearchSpace::denormalize(const Vector& z) const {
  Vector x(z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    const auto u = static_cast<std::size_t>(j);
    const double v = lower_[u] + z[j] * (upper_[u] - lower_[u]);
    x[j] = std::min(std::max(v, lower_[u]), upper_[u]);
  }
  return x;
}

void Dataset::add(Observation obs) {
  if (static_cast<std::size_t>(obs.x.size()) != space_.dim())
    throw std::invalid_argument("observation dimension does not match the search space");
  if (!std::isfinite(obs.y)) throw std::invalid_argument("observation value is not finite");
  if (!space_.contains(obs.x)) throw std::out_of_range("observation lies outside the search space");
  observations_.push_back(std::move(obs));
}

Matrix Dataset::normalized_inputs() const {
  Matrix X(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(space_.dim()));
  for (std::size_t i = 0; i < size(); ++i)
    X.row(static_cast<Eigen::Index>(i)) = space_.normalize(observations_[i].x).transpose();
  return X;
}

Vector Dataset::targets() const {
  Vector y(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) y[static_cast<Eigen::Index>(i)] = observations_[i].y;
  return y;
}

std::vector<Vector> sample_uniform(const SearchSpace& space, std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_uniform needs n >= 1");
  std::vector<Vector> out;
  out.reserve(n);
  const auto d = static_cast<Eigen::Index>(space.dim());
  for (std::size_t i = 0; i < n; ++i) {
    Vector x(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto u = static_cast<std::size_t>(j);
      x[j] = rng.uniform(space.lower()[u], space.upper()[u]);
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace dkibo
