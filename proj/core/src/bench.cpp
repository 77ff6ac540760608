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

#include "dkibo/bench.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dkibo {

namespace {

using std::numbers::pi;

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index j = 0;
  for (double x : values) v[j++] = x;
  return v;
}

// Mixture response constants. The response increases with the loading and
// the ripple is a penalty that vanishes on the corners, so the maximizer is
// the corner with every positively weighted component at 1.
constexpr std::array<double, 10> kMixtureWeights = {3.0, 2.4, 1.9, 1.5, 1.1,
                                                    0.8, 0.5, 0.3, -0.6, -1.2};
constexpr double kMixtureScale = 10.0;
constexpr double kMixtureSaturation = 1.0;
constexpr double kMixtureRipple = 0.15;

double mixture_loading_max() {
  double s = 0.0;
  for (double w : kMixtureWeights) s += std::max(w, 0.0);
  return s;
}

std::vector<BenchmarkFn> build_registry() {
  std::vector<BenchmarkFn> r;
  auto box = [](std::size_t d, double lo, double hi) {
    return SearchSpace(std::vector<double>(d, lo), std::vector<double>(d, hi));
  };

  r.push_back({"colville", "Colville", box(4, -10, 10), colville, 0.0, vec({1, 1, 1, 1}),
               "closed form"});
  r.push_back({"michalewicz", "Michalewicz", box(10, 0, pi), michalewicz, -9.6601517156413414,
               vec({2.202905520167902, 1.5707963267906455, 1.2849915705401362, 1.9230584698597362,
                    1.7204697725765929, 1.5707963267905152, 1.4544139713502304, 1.7560865209375032,
                    1.6557174168110371, 1.5707963267905272}),
               "separable per-coordinate minimization (40-digit arithmetic), m = 10"});
  r.push_back({"ackley", "Ackley", box(2, -32.768, 32.768), ackley, 0.0, vec({0, 0}),
               "closed form"});
  r.push_back({"branin", "Branin", SearchSpace({-5, 0}, {10, 15}), branin, 0.39788735772973816,
               vec({pi, 2.275}), "closed form at (pi, 2.275)"});
  r.push_back({"eggholder", "Eggholder", box(2, -512, 512), eggholder, -959.64066272085074,
               vec({512, 404.23180499386461}), "bounded 1-d refinement along x1 = 512"});
  r.push_back({"goldstein_price", "Goldstein price", box(2, -2, 2), goldstein_price, 3.0,
               vec({0, -1}), "closed form"});
  r.push_back({"hartmann6", "Hartmann", box(6, 0, 1), hartmann6, -3.3223680114155143,
               vec({0.20168950308154784, 0.15001069256125274, 0.47687397826899963,
                    0.2753324293380429, 0.31165161699824356, 0.6573005342028397}),
               "L-BFGS-B + Nelder-Mead refinement from the literature minimizer"});
  r.push_back({"rosenbrock", "Rosenbrock", box(2, -5, 10), rosenbrock, 0.0, vec({1, 1}),
               "closed form"});
  r.push_back({"six_hump_camel", "Six hump camel", SearchSpace({-3, -2}, {3, 2}), six_hump_camel,
               -1.0316284534898774, vec({0.08984201164977734, -0.7126564041106396}),
               "L-BFGS-B + Nelder-Mead refinement from the literature minimizer"});
  r.push_back({"styblinski_tang", "StyblinskiTang", box(2, -5, 5), styblinski_tang,
               -78.332331407542824, vec({-2.9035340286202334, -2.9035340286202334}),
               "bounded 1-d refinement (separable)"});

  Vector corner(10);
  for (Eigen::Index j = 0; j < 10; ++j)
    corner[j] = kMixtureWeights[static_cast<std::size_t>(j)] > 0.0 ? 1.0 : 0.0;
  r.push_back({"mixture", "Mixture", box(10, 0, 1),
               [](const Vector& x) { return -mixture_demo(x); }, -mixture_demo(corner), corner,
               "positive-weight corner, confirmed by seeded random + local search"});

  for (const auto& fn : r) {
    if (fn.x_min && std::abs(fn.evaluate(*fn.x_min) - fn.f_min) > 1e-6) {
      throw std::logic_error("benchmark " + fn.name + " does not reach its f_min at x_min");
    }
  }
  return r;
}

}  // namespace

std::span<const BenchmarkFn> benchmarks() {
  static const std::vector<BenchmarkFn> registry = build_registry();
  return registry;
}

std::vector<std::string> synthetic_suite() {
  return {"colville", "michalewicz", "ackley", "branin", "eggholder",
          "goldstein_price", "hartmann6", "rosenbrock", "six_hump_camel", "styblinski_tang"};
}

const BenchmarkFn& find_benchmark(std::string_view name) {
  for (const auto& fn : benchmarks())
    if (fn.name == name) return fn;
  throw std::invalid_argument("unknown benchmark '" + std::string(name) + "'");
}

double eval_benchmark(std::string_view name, const Vector& x) {
  const BenchmarkFn& fn = find_benchmark(name);
  if (!fn.space.contains(x))
    throw std::out_of_range("point outside the domain of benchmark '" + fn.name + "'");
  return fn.evaluate(x);
}

double ackley(const Vector& x) {
  const double d = static_cast<double>(x.size());
  const double sq = x.squaredNorm() / d;
  const double cs = (2.0 * pi * x.array()).cos().sum() / d;
  return -20.0 * std::exp(-0.2 * std::sqrt(sq)) - std::exp(cs) + 20.0 + std::numbers::e;
}

double branin(const Vector& x) {
  const double b = 5.1 / (4.0 * pi * pi);
  const double c = 5.0 / pi;
  const double t = 1.0 / (8.0 * pi);
  const double u = x[1] - b * x[0] * x[0] + c * x[0] - 6.0;
  return u * u + 10.0 * (1.0 - t) * std::cos(x[0]) + 10.0;
}

double eggholder(const Vector& x) {
  const double a = x[1] + 47.0;
  return -a * std::sin(std::sqrt(std::abs(x[0] / 2.0 + a))) -
         x[0] * std::sin(std::sqrt(std::abs(x[0] - a)));
}

double goldstein_price(const Vector& x) {
  const double u = x[0], v = x[1];
  const double s = u + v + 1.0;
  const double a = 1.0 + s * s * (19.0 - 14.0 * u + 3.0 * u * u - 14.0 * v + 6.0 * u * v + 3.0 * v * v);
  const double t = 2.0 * u - 3.0 * v;
  const double b =
      30.0 + t * t * (18.0 - 32.0 * u + 12.0 * u * u + 48.0 * v - 36.0 * u * v + 27.0 * v * v);
  return a * b;
}

double hartmann6(const Vector& x) {
  static constexpr double alpha[4] = {1.0, 1.2, 3.0, 3.2};
  static constexpr double A[4][6] = {{10, 3, 17, 3.5, 1.7, 8},
                                     {0.05, 10, 17, 0.1, 8, 14},
                                     {3, 3.5, 1.7, 10, 17, 8},
                                     {17, 8, 0.05, 10, 0.1, 14}};
  static constexpr double P[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                     {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                     {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                     {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (int j = 0; j < 6; ++j) {
      const double diff = x[j] - P[i][j];
      inner += A[i][j] * diff * diff;
    }
    sum += alpha[i] * std::exp(-inner);
  }
  return -sum;
}

double michalewicz(const Vector& x) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    sum += std::sin(x[i]) * std::pow(std::sin(k * x[i] * x[i] / pi), 20.0);
  }
  return -sum;
}

double rosenbrock(const Vector& x) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    sum += 100.0 * a * a + b * b;
  }
  return sum;
}

double six_hump_camel(const Vector& x) {
  const double u = x[0], v = x[1];
  return (4.0 - 2.1 * u * u + u * u * u * u / 3.0) * u * u + u * v + (-4.0 + 4.0 * v * v) * v * v;
}

double styblinski_tang(const Vector& x) {
  return 0.5 * (x.array().pow(4) - 16.0 * x.array().square() + 5.0 * x.array()).sum();
}

double colville(const Vector& x) {
  const double a = x[0] * x[0] - x[1];
  const double b = x[2] * x[2] - x[3];
  return 100.0 * a * a + (x[0] - 1.0) * (x[0] - 1.0) + (x[2] - 1.0) * (x[2] - 1.0) +
         90.0 * b * b + 10.1 * ((x[1] - 1.0) * (x[1] - 1.0) + (x[3] - 1.0) * (x[3] - 1.0)) +
         19.8 * (x[1] - 1.0) * (x[3] - 1.0);
}

double mixture_demo(const Vector& x) {
  double loading = 0.0;
  double ripple = 0.0;
  for (Eigen::Index j = 0; j < 10; ++j) {
    const auto u = static_cast<std::size_t>(j);
    loading += kMixtureWeights[u] * x[j];
    const double s = std::sin(2.0 * pi * x[j]);
    ripple += s * s;
  }
  // Saturating loading response: c u (1 + k) / (1 + k u / U), equal to c at u = U.
  const double top = mixture_loading_max();
  const double response =
      kMixtureScale * (loading / top) * (1.0 + kMixtureSaturation) /
      (1.0 + kMixtureSaturation * std::max(loading, 0.0) / top);
  return response - kMixtureRipple * ripple;
}

std::span<const double> mixture_weights() { return kMixtureWeights; }

}  // namespace dkibo
