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

#include <benchmark/benchmark.h>

#include "dkibo/acquisition.hpp"
#include "dkibo/bench.hpp"
#include "dkibo/gp.hpp"
#include "dkibo/models.hpp"
#include "dkibo/rng.hpp"

namespace {

using namespace dkibo;

struct Sample {
  Matrix X;
  Vector y;
};

Sample branin_sample(int n) {
  const auto& fn = find_benchmark("branin");
  Rng rng(n);
  Sample s{Matrix(n, 2), Vector(n)};
  for (int i = 0; i < n; ++i) {
    s.X(i, 0) = rng.uniform();
    s.X(i, 1) = rng.uniform();
    s.y[i] = -fn.evaluate(fn.space.denormalize(s.X.row(i).transpose()));
  }
  return s;
}

void BM_GpFit(benchmark::State& state) {
  const auto s = branin_sample(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Rng rng(1);
    benchmark::DoNotOptimize(GpModel::fit(s.X, s.y, MeanMode::zero, rng));
  }
}
BENCHMARK(BM_GpFit)->Arg(10)->Arg(50)->Arg(105)->Unit(benchmark::kMillisecond);

void BM_Lml(benchmark::State& state) {
  const auto s = branin_sample(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(log_marginal_likelihood(s.X, s.y, {0.3, 1.0, 1e-4}));
}
BENCHMARK(BM_Lml)->Arg(50)->Arg(105);

void BM_ForestFit(benchmark::State& state) {
  const auto s = branin_sample(static_cast<int>(state.range(0)));
  const auto spec = RegressorSpec::defaults(RegressorKind::random_forest);
  for (auto _ : state) {
    Rng rng(1);
    benchmark::DoNotOptimize(Regressor::fit(s.X, s.y, spec, rng));
  }
}
BENCHMARK(BM_ForestFit)->Arg(10)->Arg(105);

void BM_MaximizeAcquisition(benchmark::State& state) {
  const auto s = branin_sample(50);
  const auto gp = GpModel::condition(s.X, s.y, MeanMode::zero, {0.3, 1.0, 1e-4});
  Rng xi_rng(2);
  const auto xi =
      Regressor::fit(s.X, s.y, RegressorSpec::defaults(RegressorKind::random_forest), xi_rng);
  AcquisitionConfig cfg;
  const AugmentState aug{1.0, false, std::nullopt};
  for (auto _ : state) {
    Rng rng(3);
    benchmark::DoNotOptimize(maximize_acquisition(
        [&](const Vector& z) { return augmented_acquisition(z, gp, xi, aug, cfg, 30, 0.0); }, 2,
        rng));
  }
}
BENCHMARK(BM_MaximizeAcquisition)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
