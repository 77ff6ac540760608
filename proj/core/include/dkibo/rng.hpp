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

#ifndef DKIBO_RNG_HPP
#define DKIBO_RNG_HPP

#include <array>
#include <cstddef>
#include <cstdint>

namespace dkibo {

/// Pseudo-random stream with a fully specified algorithm so that campaigns
/// replay bit-for-bit on every platform.
///
/// The generator is xoshiro256** (Blackman & Vigna). Its 256-bit state is
/// filled from the 64-bit seed with four splitmix64 outputs. Doubles use the
/// top 53 bits of a draw, integers in [0, n) use the high word of a
/// 64x64->128 multiply. None of the std:: distributions are used because
/// their output is implementation defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t next_u64();

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n); n must be positive.
  std::size_t index(std::size_t n);

  /// Independent child stream derived from the construction seed and a
  /// stream id. The result does not depend on how many values were drawn
  /// from *this, so a component can skip work without shifting the
  /// streams of the others.
  Rng fork(std::uint64_t stream) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_;
};

/// One step of splitmix64 on a copy of x.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace dkibo

#endif  // DKIBO_RNG_HPP
