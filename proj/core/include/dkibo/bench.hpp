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

#ifndef DKIBO_BENCH_HPP
#define DKIBO_BENCH_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dkibo/space.hpp"

namespace dkibo {

/// A minimization test function on its standard literature domain.
struct BenchmarkFn {
  std::string name;   // registry key, e.g. "six_hump_camel"
  std::string label;  // table label, e.g. "Six hump camel"
  SearchSpace space;
  std::function<double(const Vector&)> evaluate;
  double f_min = 0.0;
  std::optional<Vector> x_min;
  std::string f_min_source;  // where f_min comes from
};

/// Every registered function, checked once on first use:
/// evaluate(x_min) must match f_min within 1e-6.
std::span<const BenchmarkFn> benchmarks();

/// The ten synthetic functions of the regret tables, in table order.
std::vector<std::string> synthetic_suite();

/// Throws std::invalid_argument for an unknown name.
const BenchmarkFn& find_benchmark(std::string_view name);

/// Throws std::invalid_argument for an unknown name and std::out_of_range
/// when x is outside the function's domain.
double eval_benchmark(std::string_view name, const Vector& x);

double ackley(const Vector& x);
double branin(const Vector& x);
double eggholder(const Vector& x);
double goldstein_price(const Vector& x);
double hartmann6(const Vector& x);
double michalewicz(const Vector& x);
double rosenbrock(const Vector& x);
double six_hump_camel(const Vector& x);
double styblinski_tang(const Vector& x);
double colville(const Vector& x);

/// Synthetic 10-component mixture response on [0,1]^10, to be maximized.
/// A weighted linear loading term saturates smoothly once the total loading
/// passes a budget, minus a small sinusoidal ripple that vanishes on the
/// corners. See bench.cpp for the
/// constants and the maximizer.
double mixture_demo(const Vector& x);

/// Weights of the linear loading term of mixture_demo.
std::span<const double> mixture_weights();

}  // namespace dkibo

#endif  // DKIBO_BENCH_HPP
