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

#include "gravbound_cli/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "gravbound/errors.hpp"
#include "gravbound/kernels.hpp"

namespace gravbound::cli {
namespace {

struct Prepared {
  Eigen::MatrixXd train;
  Eigen::MatrixXd test;
};

void project_rows_to_sphere(Eigen::MatrixXd& X) {
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    const double norm = X.row(r).norm();
    if (norm == 0.0) {
      std::ostringstream msg;
      msg << "input row " << r << " is zero and cannot be projected to the unit sphere";
      throw DomainError(msg.str());
    }
    X.row(r) /= norm;
  }
}

Prepared prepare_inputs(const Split& split, InputMode mode) {
  Prepared p{split.X_train, split.X_test};
  if (mode == InputMode::kRaw) return p;
  const Eigen::RowVectorXd mean = p.train.colwise().mean();
  Eigen::RowVectorXd sd =
      ((p.train.rowwise() - mean).array().square().colwise().sum() /
       std::max<double>(1.0, static_cast<double>(p.train.rows()) - 1.0))
          .sqrt();
  for (Eigen::Index c = 0; c < sd.size(); ++c) {
    if (!(sd(c) > 0.0)) sd(c) = 1.0;
  }
  p.train = (p.train.rowwise() - mean).array().rowwise() / sd.array();
  p.test = (p.test.rowwise() - mean).array().rowwise() / sd.array();
  if (mode == InputMode::kUnitSphere) {
    project_rows_to_sphere(p.train);
    project_rows_to_sphere(p.test);
  }
  return p;
}

Eigen::MatrixXd lift_rows(const Eigen::MatrixXd& X) {
  Eigen::MatrixXd out(X.rows(), X.cols() + 1);
  out.leftCols(X.cols()) = X / std::sqrt(2.0);
  out.col(X.cols()).setConstant(1.0 / std::sqrt(2.0));
  return out;
}

DotProductKernel make_kernel(KernelChoice choice, const FitConfig& config) {
  switch (choice) {
    case KernelChoice::kModifiedRelu:
      return DotProductKernel::modified_relu();
    case KernelChoice::kGaussian:
      return DotProductKernel::gaussian_on_sphere(1.0);
    case KernelChoice::kReluMc:
      return DotProductKernel::monte_carlo(
          {Activation::kRelu, config.width, config.seed,
           config.sigma_sq > 0.0 ? config.sigma_sq : 1.0});
    case KernelChoice::kSlowDecay:
      return DotProductKernel::slow_decay(2.0);
  }
  throw DomainError("unknown kernel");
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

ResultRow base_row(const Split& split, const FitConfig& config) {
  ResultRow row;
  row.k = config.k;
  row.model = model_name(config.model);
  row.n_train = static_cast<int>(split.X_train.rows());
  row.n_test = static_cast<int>(split.X_test.rows());
  row.width = config.model == ModelKind::kKernel ? 0 : config.width;
  row.seed = config.seed;
  return row;
}

void score(ResultRow& row, const Eigen::VectorXd& pred, const Eigen::VectorXd& truth) {
  const auto p = to_vector(pred);
  const auto t = to_vector(truth);
  row.rmse = rmse(p, t);
  row.normalized_rmse = normalized_rmse(p, t);
}

ResultRow fit_kernel(const Split& split, const FitConfig& config) {
  Prepared p = prepare_inputs(split, config.input_mode);
  project_rows_to_sphere(p.train);
  project_rows_to_sphere(p.test);
  if (config.kernel != KernelChoice::kGaussian) {
    p.train = lift_rows(p.train);
    p.test = lift_rows(p.test);
  }
  const DotProductKernel kernel = make_kernel(config.kernel, config);
  const GramSystem G = gram(kernel, p.train, config.diagnostics);
  const Eigen::VectorXd alpha = solve_min_norm(G, split.y_train);
  ResultRow row = base_row(split, config);
  row.kernel = kernel.name();
  if (config.kernel == KernelChoice::kReluMc) row.width = config.width;
  score(row, predict(alpha, p.train, kernel, p.test), split.y_test);
  if (config.diagnostics) {
    row.complexity = complexity(G, split.y_train);
    row.lambda0 = G.lambda_min;
  }
  return row;
}

ResultRow fit_network(const Split& split, const FitConfig& config) {
  Prepared p = prepare_inputs(split, config.input_mode);
  if (config.model == ModelKind::kReluBiasNet) {
    // A constant input of typical row norm plays the role of the bias.
    const double typical =
        std::sqrt(p.train.rowwise().squaredNorm().mean());
    const double c = typical > 0.0 ? typical : 1.0;
    Eigen::MatrixXd train(p.train.rows(), p.train.cols() + 1);
    Eigen::MatrixXd test(p.test.rows(), p.test.cols() + 1);
    train << p.train, Eigen::VectorXd::Constant(p.train.rows(), c);
    test << p.test, Eigen::VectorXd::Constant(p.test.rows(), c);
    p.train = std::move(train);
    p.test = std::move(test);
  }
  const Activation act =
      config.model == ModelKind::kExpNet ? Activation::kExponential : Activation::kRelu;
  const int dim = static_cast<int>(p.train.cols());
  const double sigma_sq = config.sigma_sq > 0.0 ? config.sigma_sq : 1.0 / dim;
  const RandomFeatureMap map(dim, config.width, act, sigma_sq, config.seed);
  const RandomFeatureModel model = fit_top_layer(map, p.train, split.y_train);
  ResultRow row = base_row(split, config);
  row.kernel = act == Activation::kRelu ? "random-features(relu)" : "random-features(exp)";
  score(row, model.predict(p.test), split.y_test);
  return row;
}

}  // namespace

std::optional<ModelKind> parse_model(const std::string& name) {
  if (name == "modified-relu-kernel" || name == "kernel") return ModelKind::kKernel;
  if (name == "relu-net") return ModelKind::kReluNet;
  if (name == "relu-bias-net") return ModelKind::kReluBiasNet;
  if (name == "exp-net") return ModelKind::kExpNet;
  return std::nullopt;
}

std::string model_name(ModelKind model) {
  switch (model) {
    case ModelKind::kKernel:
      return "modified-relu-kernel";
    case ModelKind::kReluNet:
      return "relu-net";
    case ModelKind::kReluBiasNet:
      return "relu-bias-net";
    case ModelKind::kExpNet:
      return "exp-net";
  }
  return "unknown";
}

std::optional<KernelChoice> parse_kernel(const std::string& name) {
  if (name == "modified-relu") return KernelChoice::kModifiedRelu;
  if (name == "gaussian") return KernelChoice::kGaussian;
  if (name == "relu-mc") return KernelChoice::kReluMc;
  if (name == "slow-decay") return KernelChoice::kSlowDecay;
  return std::nullopt;
}

Split split_table(const NumericTable& table, double test_fraction) {
  if (table.cols() < 2) throw DomainError("dataset needs at least one feature and a label");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw DomainError("test fraction must lie in (0, 1)");
  }
  const auto rows = static_cast<Eigen::Index>(table.rows());
  const auto n_test = static_cast<Eigen::Index>(std::ceil(test_fraction * rows));
  const Eigen::Index n_train = rows - n_test;
  if (n_train < 1 || n_test < 1) throw DomainError("dataset too small to split");
  const auto d = static_cast<Eigen::Index>(table.cols()) - 1;
  Split s;
  s.X_train.resize(n_train, d);
  s.X_test.resize(n_test, d);
  s.y_train.resize(n_train);
  s.y_test.resize(n_test);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto row = table.row(static_cast<std::size_t>(r));
    auto& X = r < n_train ? s.X_train : s.X_test;
    auto& y = r < n_train ? s.y_train : s.y_test;
    const Eigen::Index i = r < n_train ? r : r - n_train;
    for (Eigen::Index c = 0; c < d; ++c) X(i, c) = row[static_cast<std::size_t>(c)];
    y(i) = row[static_cast<std::size_t>(d)];
  }
  return s;
}

Split gravity_split(int k, int n_train, int n_test, std::uint64_t data_seed,
                    const SamplingParams& params) {
  if (n_train < 1 || n_test < 1) throw DomainError("n_train and n_test must be positive");
  const auto data = generate_dataset(k, static_cast<std::size_t>(n_train + n_test),
                                     data_seed, params);
  const Eigen::Index d = 4 * (k + 1);
  Split s;
  s.X_train.resize(n_train, d);
  s.X_test.resize(n_test, d);
  s.y_train.resize(n_train);
  s.y_test.resize(n_test);
  for (int r = 0; r < n_train + n_test; ++r) {
    const auto f = data[static_cast<std::size_t>(r)].features();
    auto& X = r < n_train ? s.X_train : s.X_test;
    auto& y = r < n_train ? s.y_train : s.y_test;
    const int i = r < n_train ? r : r - n_train;
    for (Eigen::Index c = 0; c < d; ++c) X(i, c) = f[static_cast<std::size_t>(c)];
    y(i) = data[static_cast<std::size_t>(r)].label;
  }
  return s;
}

ResultRow fit_and_evaluate(const Split& split, const FitConfig& config) {
  if (config.width < 1) throw DomainError("width must be >= 1");
  return config.model == ModelKind::kKernel ? fit_kernel(split, config)
                                            : fit_network(split, config);
}

SweepResult run_sweep(const SweepConfig& config) {
  if (config.k_list.empty() || config.models.empty() || config.seeds.empty()) {
    throw DomainError("sweep needs at least one k, model and seed");
  }
  SweepResult out;
  for (int k : config.k_list) {
    const Split split = gravity_split(k, config.n_train, config.n_test,
                                      mix_seed(config.data_seed, static_cast<std::uint64_t>(k)),
                                      config.sampling);
    for (ModelKind model : config.models) {
      for (std::uint64_t seed : config.seeds) {
        FitConfig fc;
        fc.model = model;
        fc.input_mode = config.input_mode;
        fc.width = config.width;
        fc.seed = seed;
        fc.k = k;
        out.rows.push_back(fit_and_evaluate(split, fc));
      }
    }
  }
  std::sort(out.rows.begin(), out.rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.k, a.model, a.seed) < std::tie(b.k, b.model, b.seed);
  });
  for (std::size_t i = 0; i < out.rows.size();) {
    std::size_t j = i;
    while (j < out.rows.size() && out.rows[j].k == out.rows[i].k &&
           out.rows[j].model == out.rows[i].model) {
      ++j;
    }
    AggregateRow agg;
    agg.k = out.rows[i].k;
    agg.model = out.rows[i].model;
    agg.count = static_cast<int>(j - i);
    for (std::size_t r = i; r < j; ++r) {
      agg.rmse_mean += out.rows[r].rmse / agg.count;
      agg.nrmse_mean += out.rows[r].normalized_rmse / agg.count;
    }
    if (agg.count > 1) {
      for (std::size_t r = i; r < j; ++r) {
        agg.rmse_std += std::pow(out.rows[r].rmse - agg.rmse_mean, 2);
        agg.nrmse_std += std::pow(out.rows[r].normalized_rmse - agg.nrmse_mean, 2);
      }
      agg.rmse_std = std::sqrt(agg.rmse_std / (agg.count - 1));
      agg.nrmse_std = std::sqrt(agg.nrmse_std / (agg.count - 1));
    }
    out.aggregates.push_back(agg);
    i = j;
  }
  return out;
}

std::string format_sweep(const SweepResult& result) {
  std::ostringstream s;
  s << results_header() << ",rmse_std,normalized_rmse_std\n";
  std::size_t r = 0;
  for (const auto& agg : result.aggregates) {
    const ResultRow* last = nullptr;
    for (int c = 0; c < agg.count; ++c, ++r) {
      last = &result.rows[r];
      s << format_result_row(*last) << ",,\n";
    }
    s << agg.k << ',' << agg.model << ',' << last->kernel << ',' << last->n_train << ','
      << last->n_test << ',' << last->width << ",mean," << format_double(agg.rmse_mean)
      << ',' << format_double(agg.nrmse_mean) << ",,," << format_double(agg.rmse_std) << ','
      << format_double(agg.nrmse_std) << '\n';
  }
  return s.str();
}

}  // namespace gravbound::cli
