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

#include <vector>

#include "gravbound/kernels.hpp"

namespace {

void BM_ModifiedReluCoeffs(benchmark::State& state) {
  const int k_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gravbound::modified_relu_coeffs(k_max));
  }
}
BENCHMARK(BM_ModifiedReluCoeffs)->Arg(100)->Arg(500)->Arg(2000);

void BM_ModifiedReluEval(benchmark::State& state) {
  double t = -0.999;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gravbound::modified_relu_eval(t));
    t = t > 0.999 ? -0.999 : t + 1e-3;
  }
}
BENCHMARK(BM_ModifiedReluEval);

void BM_TangentEstimate(benchmark::State& state) {
  const std::vector<double> x{0.6, 0.8, 0.0}, y{0.0, 0.6, 0.8};
  const auto u = gravbound::input_lift(x), v = gravbound::input_lift(y);
  const int m = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gravbound::mc_relu_tangent_estimate(u, v, m, seed++));
  }
  state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_TangentEstimate)->Arg(1000)->Arg(100000);

}  // namespace
