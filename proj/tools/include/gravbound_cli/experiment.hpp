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

// Fitting and sweep logic behind the `fit` and `sweep` commands.

#ifndef GRAVBOUND_CLI_EXPERIMENT_HPP_
#define GRAVBOUND_CLI_EXPERIMENT_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gravbound/gravity_data.hpp"
#include "gravbound/regression.hpp"
#include "gravbound/table_io.hpp"

namespace gravbound::cli {

enum class ModelKind { kKernel, kReluNet, kReluBiasNet, kExpNet };

// Accepts modified-relu-kernel (alias kernel), relu-net, relu-bias-net and
// exp-net.
std::optional<ModelKind> parse_model(const std::string& name);
std::string model_name(ModelKind model);

enum class KernelChoice { kModifiedRelu, kGaussian, kReluMc, kSlowDecay };
std::optional<KernelChoice> parse_kernel(const std::string& name);

// How raw feature columns are turned into network / kernel inputs.
//  kRaw:         columns used as they are (default).
//  kStandardize: per-feature z-scores with training-set statistics.
//  kUnitSphere:  standardize, then project every row to the unit sphere.
// Kernel models always project the result to the unit sphere as well.
enum class InputMode { kRaw, kStandardize, kUnitSphere };

struct Split {
  Eigen::MatrixXd X_train;
  Eigen::MatrixXd X_test;
  Eigen::VectorXd y_train;
  Eigen::VectorXd y_test;
};

// Last column is the label; the final ceil(test_fraction * rows) rows form
// the test set (at least one row each side).
Split split_table(const NumericTable& table, double test_fraction);
// Deterministic generation of n_train + n_test instances.
Split gravity_split(int k, int n_train, int n_test, std::uint64_t data_seed,
                    const SamplingParams& params = {});

struct FitConfig {
  ModelKind model = ModelKind::kReluNet;
  KernelChoice kernel = KernelChoice::kModifiedRelu;
  InputMode input_mode = InputMode::kRaw;
  int width = 1000;
  std::uint64_t seed = 0;
  // 0 means 1 / input dimension.
  double sigma_sq = 0.0;
  // Number of bodies, recorded in the results row (0 for generic data).
  int k = 0;
  // Kernel models: also compute y^T H^-1 y and lambda_0.
  bool diagnostics = true;
};

ResultRow fit_and_evaluate(const Split& split, const FitConfig& config);

struct SweepConfig {
  std::vector<int> k_list{5, 10, 20};
  int n_train = 50000;
  int n_test = 5000;
  std::vector<ModelKind> models{ModelKind::kReluNet, ModelKind::kReluBiasNet,
                                ModelKind::kExpNet};
  int width = 1000;
  std::vector<std::uint64_t> seeds{0, 1, 2};
  std::uint64_t data_seed = 2024;
  InputMode input_mode = InputMode::kRaw;
  SamplingParams sampling;
};

struct AggregateRow {
  int k = 0;
  std::string model;
  int count = 0;
  double rmse_mean = 0.0;
  double rmse_std = 0.0;
  double nrmse_mean = 0.0;
  double nrmse_std = 0.0;
};

struct SweepResult {
  // Sorted by (k, model, seed).
  std::vector<ResultRow> rows;
  // One per (k, model), same order.
  std::vector<AggregateRow> aggregates;
};

// The dataset for k uses mix_seed(data_seed, k) as its base seed, shared by
// every model and seed at that k.
SweepResult run_sweep(const SweepConfig& config);

// Detail rows followed, per (k, model) group, by its aggregate row. The
// aggregate row has seed "mean" and the standard deviations in two extra
// columns.
std::string format_sweep(const SweepResult& result);

}  // namespace gravbound::cli

#endif  // GRAVBOUND_CLI_EXPERIMENT_HPP_
