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

#ifndef DKIBO_SPACE_HPP
#define DKIBO_SPACE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "dkibo/rng.hpp"

namespace dkibo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Axis-aligned box. Construction rejects empty or degenerate bounds.
class SearchSpace {
 public:
  SearchSpace(std::vector<double> lower, std::vector<double> upper);

  std::size_t dim() const { return lower_.size(); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }

  bool contains(const Vector& x) const;

  /// Maps original units to [0,1]^dim. Throws std::out_of_range when x is
  /// outside the box or has the wrong dimension.
  Vector normalize(const Vector& x) const;
  /// Inverse of normalize. Results are clamped to the box so rounding can
  /// never produce an out-of-bounds point.
  Vector denormalize(const Vector& z) const;

  bool operator==(const SearchSpace&) const = default;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

struct Observation {
  Vector x;  // original units
  double y = 0.0;
};

/// Observations in acquisition order. Positions are stable: add() only
/// appends, and every point is validated against the space on entry.
class Dataset {
 public:
  explicit Dataset(SearchSpace space) : space_(std::move(space)) {}

  /// Throws std::invalid_argument on dimension mismatch or non-finite y and
  /// std::out_of_range when x leaves the box.
  void add(Observation obs);

  const SearchSpace& space() const { return space_; }
  std::size_t size() const { return observations_.size(); }
  bool empty() const { return observations_.empty(); }
  const Observation& operator[](std::size_t i) const { return observations_[i]; }
  std::span<const Observation> observations() const { return observations_; }

  /// Row-major n x dim matrix of normalized inputs.
  Matrix normalized_inputs() const;
  Vector targets() const;

 private:
  SearchSpace space_;
  std::vector<Observation> observations_;
};

/// n points drawn uniformly from the box (original units). Coordinates are
/// drawn point by point, dimension by dimension, from rng.
std::vector<Vector> sample_uniform(const SearchSpace& space, std::size_t n, Rng& rng);

}  // namespace dkibo

#endif  // DKIBO_SPACE_HPP
