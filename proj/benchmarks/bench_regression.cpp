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

#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "gravbound/kernels.hpp"
#include "gravbound/regression.hpp"

namespace {

// Lifted unit-sphere rows in R^{d+1}.
Eigen::MatrixXd sphere_rows(int n, int d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd X(n, d + 1);
  std::vector<double> x(static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i) {
    for (double& v : x) v = normal(gen);
    const auto l = gravbound::input_lift(x, true);
    for (int c = 0; c <= d; ++c) X(i, c) = l[static_cast<std::size_t>(c)];
  }
  return X;
}

void BM_GramAndSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::MatrixXd X = sphere_rows(n, 5, 1);
  const Eigen::VectorXd y = X.col(0).cwiseProduct(X.col(1));
  const auto kernel = gravbound::DotProductKernel::modified_relu();
  for (auto _ : state) {
    const gravbound::GramSystem G = gravbound::gram(kernel, X);
    benchmark::DoNotOptimize(gravbound::solve_min_norm(G, y));
  }
}
BENCHMARK(BM_GramAndSolve)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_FitTopLayer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int width = static_cast<int>(state.range(1));
  const Eigen::MatrixXd X = sphere_rows(n, 5, 2);
  const Eigen::VectorXd y = X.col(0) - X.col(2);
  const gravbound::RandomFeatureMap map(6, width, gravbound::Activation::kRelu, 1.0, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gravbound::fit_top_layer(map, X, y, 1024));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_FitTopLayer)->Args({5000, 200})->Args({20000, 500})->Unit(benchmark::kMillisecond);

}  // namespace
