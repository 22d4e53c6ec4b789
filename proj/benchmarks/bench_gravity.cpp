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

#include "gravbound/gravity_bound.hpp"
#include "gravbound/gravity_data.hpp"

namespace {

void BM_GravityBoundLog(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(gravbound::gravity_bound_log(2.0, 20, 0.01));
  }
}
BENCHMARK(BM_GravityBoundLog);

void BM_InverseCubeTaylor(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gravbound::inverse_cube_taylor(0.5, 1.0, d));
  }
}
BENCHMARK(BM_InverseCubeTaylor)->Arg(10)->Arg(500);

void BM_GenerateDataset(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gravbound::generate_dataset(k, 1000, 7, {}, 1));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_GenerateDataset)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
