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

// Kernel regression, random-feature networks with a trained top layer, and
// the generalization diagnostics built on y^T H^-1 y.
//
// Inputs are stored one per row.

#ifndef GRAVBOUND_REGRESSION_HPP_
#define GRAVBOUND_REGRESSION_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gravbound/kernels.hpp"

namespace gravbound {

inline constexpr int kMaxExactGramSize = 2000;

// The Gram matrix H and a Cholesky factorization of H + jitter I, with the
// smallest jitter from {0, 1e-12, 1e-10, 1e-8, 1e-6} * trace(H)/n that
// factors.
struct GramSystem {
  Eigen::MatrixXd H;
  Eigen::LLT<Eigen::MatrixXd> factor;
  double jitter = 0.0;
  double jitter_level = 0.0;
  // Smallest eigenvalue of H (lambda_0); NaN when not computed.
  double lambda_min = 0.0;

  int n() const { return static_cast<int>(H.rows()); }
  Eigen::VectorXd solve(const Eigen::VectorXd& y) const;
};

// Factors a symmetric matrix. Throws IllConditionedError when even the
// largest jitter fails.
GramSystem factor_gram(Eigen::MatrixXd H, bool compute_lambda_min = true);

// H_ab = K(x_a, x_b). Exact duplicate rows throw SingularGramError naming
// the indices. n is capped at kMaxExactGramSize.
GramSystem gram(const DotProductKernel& kernel, const Eigen::MatrixXd& X,
                bool compute_lambda_min = true, int threads = 0);

// y^T H^-1 y.
double complexity(const GramSystem& G, const Eigen::VectorXd& y);

// sqrt(2 c / n) + sqrt(max(log(n / (lambda0 delta)), 1) / n); the O(1)
// constant of the second term is 1 and the log is floored at 1 so that the
// value is monotone in n. A diagnostic, not a guarantee.
double gen_bound(double complexity, int n, double lambda0, double delta);

// Dual coefficients alpha = H^-1 y of the minimum-norm interpolant.
Eigen::VectorXd solve_min_norm(const GramSystem& G, const Eigen::VectorXd& y);

// sum_a alpha_a K(x_a, x).
double predict(const Eigen::VectorXd& alpha, const Eigen::MatrixXd& X_train,
               const DotProductKernel& kernel, std::span<const double> x);
Eigen::VectorXd predict(const Eigen::VectorXd& alpha,
                        const Eigen::MatrixXd& X_train,
                        const DotProductKernel& kernel,
                        const Eigen::MatrixXd& X_test, int threads = 0);

// Frozen hidden layer h(x) = phi(W x), W with i.i.d. N(0, sigma_sq) entries.
class RandomFeatureMap {
 public:
  RandomFeatureMap(int input_dim, int width, Activation activation,
                   double sigma_sq, std::uint64_t seed);

  int input_dim() const { return static_cast<int>(W_.cols()); }
  int width() const { return static_cast<int>(W_.rows()); }
  Activation activation() const { return activation_; }
  double sigma_sq() const { return sigma_sq_; }
  std::uint64_t seed() const { return seed_; }
  const Eigen::MatrixXd& weights() const { return W_; }

  // n x width feature matrix.
  Eigen::MatrixXd features(const Eigen::MatrixXd& X) const;

 private:
  Eigen::MatrixXd W_;
  Activation activation_;
  double sigma_sq_;
  std::uint64_t seed_;
};

Eigen::MatrixXd random_features(const Eigen::MatrixXd& X, int m,
                                Activation activation, double sigma_sq,
                                std::uint64_t seed);

// Minimum-norm least-squares solution of h w = y by a complete orthogonal
// decomposition (applied to h when it is wide, to the R factor of a
// blockwise QR when it is tall).
Eigen::VectorXd min_norm_least_squares(const Eigen::MatrixXd& h,
                                       const Eigen::VectorXd& y);

struct RandomFeatureModel {
  RandomFeatureMap map;
  Eigen::VectorXd w;
  // Rows of the training features that were entirely zero.
  int zero_feature_rows = 0;

  Eigen::VectorXd predict(const Eigen::MatrixXd& X) const;
};

// Trains the top layer only. Features are generated in blocks of
// block_rows, so the full n x m feature matrix is never held at once.
RandomFeatureModel fit_top_layer(const RandomFeatureMap& map,
                                 const Eigen::MatrixXd& X,
                                 const Eigen::VectorXd& y,
                                 int block_rows = 4000);

struct SgdOptions {
  int max_epochs = 20000;
  // 0 means full batch.
  int batch_size = 0;
  // 0 means 1 / (2 L), L the top eigenvalue of h^T h / n.
  double step = 0.0;
  // Stop once ||h w - y|| <= tolerance * ||y||.
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
};

struct SgdResult {
  Eigen::VectorXd w;
  int epochs = 0;
  double step = 0.0;
  double relative_residual = 0.0;
};

// Mini-batch SGD on (1/2n) ||h w - y||^2 from w = 0.
SgdResult sgd_top_layer(const Eigen::MatrixXd& h, const Eigen::VectorXd& y,
                        const SgdOptions& options = {});

double rmse(std::span<const double> predictions, std::span<const double> labels);
// rmse / (max(labels) - min(labels)); constant labels throw DomainError.
double normalized_rmse(std::span<const double> predictions,
                       std::span<const double> labels);

struct ResultRow {
  int k = 0;
  std::string model;
  std::string kernel;
  int n_train = 0;
  int n_test = 0;
  int width = 0;
  std::uint64_t seed = 0;
  double rmse = 0.0;
  double normalized_rmse = 0.0;
  std::optional<double> complexity;
  std::optional<double> lambda0;
};

std::string results_header();
std::string format_result_row(const ResultRow& row);

}  // namespace gravbound

#endif  // GRAVBOUND_REGRESSION_HPP_
