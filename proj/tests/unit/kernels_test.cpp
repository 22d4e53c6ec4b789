// Copyright 2026 The gravbound Authors.
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "gravbound/errors.hpp"
#include "gravbound/kernels.hpp"
#include "oracles.hpp"

namespace gravbound {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(ModifiedRelu, ClosedFormValues) {
  EXPECT_NEAR(modified_relu_eval(1.0), 0.5, 1e-15);
  EXPECT_NEAR(modified_relu_eval(-1.0), 0.0, 1e-15);
  EXPECT_NEAR(modified_relu_eval(0.0), 1.0 / 6.0, 1e-15);
}

TEST(ModifiedRelu, EqualsTangentKernelOfLiftedInputs) {
  // (u.v) * arccos0(u, v) on lifted unit vectors.
  for (double t : {-0.9, -0.3, 0.0, 0.4, 0.95}) {
    const std::vector<double> x{1.0, 0.0};
    const std::vector<double> y{t, std::sqrt(1 - t * t)};
    const auto u = input_lift(x);
    const auto v = input_lift(y);
    double uv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) uv += u[i] * v[i];
    EXPECT_NEAR(modified_relu_eval(t), uv * oracle::arccos0(u, v), 1e-14) << t;
  }
}

TEST(InputLift, Examples) {
  const std::vector<double> e1{1.0, 0.0};
  const auto l = input_lift(e1);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_NEAR(l[0], 1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(l[1], 0.0);
  EXPECT_NEAR(l[2], 1 / std::sqrt(2.0), 1e-15);

  const std::vector<double> x{0.6, -0.8, 0.0};
  const std::vector<double> minus{-0.6, 0.8, -0.0};
  const auto a = input_lift(x), b = input_lift(minus);
  double aa = 0, ab = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    aa += a[i] * a[i];
    ab += a[i] * b[i];
  }
  EXPECT_NEAR(aa, 1.0, 1e-15);
  EXPECT_NEAR(ab, 0.0, 1e-15);

  const std::vector<double> unnormalized{3.0, 4.0};
  const auto n = input_lift(unnormalized, true);
  EXPECT_NEAR(n[0], 0.6 / std::sqrt(2.0), 1e-15);
}

TEST(Gaussian, Examples) {
  const std::vector<double> x{0.6, 0.8}, y{0.8, -0.6}, z{-0.6, -0.8};
  EXPECT_DOUBLE_EQ(gaussian_eval(x, x), 1.0);
  EXPECT_NEAR(gaussian_eval(x, y), std::exp(-1.0), 1e-15);
  // On the sphere: e^{-1} e^{x.x'} with x.x' = 0.
  EXPECT_NEAR(gaussian_eval(x, y), std::exp(-1.0) * std::exp(0.0), 1e-12);
  EXPECT_NEAR(gaussian_eval(x, z), std::exp(-2.0), 1e-15);
}

TEST(SlowDecay, Examples) {
  EXPECT_EQ(slow_decay_eval(0.0, 2.0), 0.0);
  EXPECT_NEAR(slow_decay_eval(1.0, 2.0), kPi * kPi / 6.0, 1e-12);
  // Frozen 40-digit Li_2(1/2).
  EXPECT_NEAR(slow_decay_eval(0.5, 2.0), 0.58224052646501250590, 1e-12);
  double direct = 0.0;
  for (int k = 1; k < 200; ++k) direct += std::pow(k, -3.0) * std::pow(-0.7, k);
  EXPECT_NEAR(slow_decay_eval(-0.7, 3.0), direct, 1e-12);
  EXPECT_THROW(slow_decay_eval(1.0, 1.0), DivergenceError);
}

TEST(Coefficients, ModifiedReluMatchesContourOracle) {
  constexpr int kMax = 400;
  const auto oracle_b = oracle::contour_coefficients(oracle::modified_relu_complex, kMax, 0.99,
                                                     16384);
  const auto b = modified_relu_coeffs(kMax);
  ASSERT_EQ(b.b.size(), static_cast<std::size_t>(kMax) + 1);
  for (int k = 0; k <= kMax; ++k) {
    const auto i = static_cast<std::size_t>(k);
    EXPECT_NEAR(b.b[i], oracle_b[i], 1e-9 * oracle_b[i] + 1e-15) << "k=" << k;
    EXPECT_LE(std::fabs(b.b[i] - oracle_b[i]), b.residual[i] + 1e-9 * oracle_b[i]) << "k=" << k;
  }
}

TEST(Coefficients, ModifiedReluFrozenLeadingTerms) {
  // Frozen from a 40-digit Taylor expansion.
  const double expect[] = {0.16666666666666666667, 0.21261074128514933746,
                           0.053601420388229782591, 0.012762242949578519665,
                           0.0080827538680663957876, 0.0051332577197193601318,
                           0.0037624982918016672789, 0.0028765690457780155435};
  const auto b = modified_relu_coeffs(7);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(b.b[k], expect[k], 1e-14 * expect[k]) << k;
}

TEST(Coefficients, ModifiedReluSumsToHalf) {
  const DotProductKernel kernel = DotProductKernel::modified_relu(500);
  const auto& b = kernel.cached_coeffs().b;
  double sum = 0.0;
  for (double v : b) {
    EXPECT_GT(v, 0.0);
    sum += v;
  }
  EXPECT_LE(std::fabs(sum - 0.5), kernel.tail_bound(1.0, 500));
  EXPECT_LT(kernel.tail_bound(1.0, 500), 0.02);
}

TEST(Coefficients, SeriesEvalWithinTailBound) {
  const DotProductKernel kernel = DotProductKernel::modified_relu(500);
  for (double t : {-1.0, -0.5, 0.0, 0.3, 0.9, 1.0}) {
    for (int K : {10, 100, 500}) {
      EXPECT_LE(std::fabs(kernel.series_eval(t, K) - kernel.eval_dot(t)),
                kernel.tail_bound(t, K))
          << "t=" << t << " K=" << K;
    }
  }
}

TEST(Coefficients, GaussianIsExpOverFactorial) {
  const auto b = series_coeffs(DotProductKernel::gaussian_on_sphere(1.0, 0), 60);
  for (int k = 0; k <= 60; ++k) {
    const double expect = std::exp(-1.0 - std::lgamma(k + 1.0));
    EXPECT_NEAR(b.b[static_cast<std::size_t>(k)], expect, 1e-13 * expect) << k;
  }
}

TEST(Coefficients, SlowDecayIsPowerLaw) {
  const auto b = series_coeffs(DotProductKernel::slow_decay(2.0, 0), 100);
  EXPECT_EQ(b.b[0], 0.0);
  for (int k = 1; k <= 100; ++k) {
    EXPECT_NEAR(b.b[static_cast<std::size_t>(k)], 1.0 / (k * k), 1e-15) << k;
  }
}

TEST(Coefficients, MonteCarloHasNone) {
  EXPECT_THROW(series_coeffs(DotProductKernel::monte_carlo({}), 10), DomainError);
}

TEST(Coefficients, TableFormat) {
  std::ostringstream os;
  const std::vector<double> b{0.5, 0.25};
  write_coefficient_table(os, b);
  EXPECT_EQ(os.str(), "# k b_k\n0 0.5\n1 0.25\n");
}

TEST(MonteCarlo, ReluDiagonalIsHalf) {
  const std::vector<double> x{0.6, 0.0, 0.8};
  const auto est = mc_kernel_estimate(x, x, Activation::kRelu, 100000, 1.0, 11);
  EXPECT_LE(std::fabs(est.value - 0.5), 3.0 * est.std_error);
}

TEST(MonteCarlo, NngpMatchesArccosClosedForm) {
  const std::vector<double> x{1.0, 0.0}, y{0.3, std::sqrt(1 - 0.09)};
  const auto u = input_lift(x), v = input_lift(y);
  const auto est = mc_kernel_estimate(u, v, Activation::kRelu, 100000, 1.0, 5);
  EXPECT_LE(std::fabs(est.value - oracle::arccos1(u, v)), 3.0 * est.std_error);
}

TEST(MonteCarlo, TangentConvergesToModifiedRelu) {
  const std::vector<double> x{1.0, 0.0}, y{-0.4, std::sqrt(1 - 0.16)};
  const auto u = input_lift(x), v = input_lift(y);
  const auto est = mc_relu_tangent_estimate(u, v, 100000, 9);
  EXPECT_LE(std::fabs(est.value - modified_relu_eval(-0.4)), 3.0 * est.std_error);
}

TEST(MonteCarlo, Deterministic) {
  const std::vector<double> x{0.1, 0.2}, y{-0.3, 0.4};
  const auto a = mc_kernel_estimate(x, y, Activation::kExponential, 1000, 0.5, 42);
  const auto b = mc_kernel_estimate(x, y, Activation::kExponential, 1000, 0.5, 42);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(DotProductKernel, Names) {
  EXPECT_EQ(DotProductKernel::modified_relu(0).name(), "modified-relu");
  EXPECT_EQ(DotProductKernel::gaussian_on_sphere(1.0, 0).name(), "gaussian(r=1)");
  EXPECT_EQ(DotProductKernel::slow_decay(2.0, 0).name(), "slow-decay(s=2)");
}

}  // namespace
}  // namespace gravbound
