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

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "gravbound/errors.hpp"
#include "gravbound/kernels.hpp"
#include "gravbound/regression.hpp"
#include "oracles.hpp"

namespace gravbound {
namespace {

// n unit vectors in R^d, lifted to R^{d+1}.
Eigen::MatrixXd lifted_sphere(int n, int d, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd X(n, d + 1);
  for (int i = 0; i < n; ++i) {
    std::vector<double> x(static_cast<std::size_t>(d));
    for (double& v : x) v = normal(gen);
    const auto l = input_lift(x, true);
    for (int c = 0; c <= d; ++c) X(i, c) = l[static_cast<std::size_t>(c)];
  }
  return X;
}

TEST(Gram, SinglePoint) {
  Eigen::MatrixXd X(1, 3);
  X << 0.6 / std::sqrt(2.0), 0.8 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  const GramSystem G = gram(DotProductKernel::modified_relu(), X);
  EXPECT_NEAR(G.H(0, 0), 0.5, 1e-12);
  Eigen::VectorXd y(1);
  y << 1.0;
  EXPECT_NEAR(complexity(G, y), 2.0, 1e-10);
  EXPECT_EQ(complexity(G, Eigen::VectorXd::Zero(1)), 0.0);
}

TEST(Gram, DuplicateRowsAreSingular) {
  Eigen::MatrixXd X = lifted_sphere(3, 2, 1);
  X.row(2) = X.row(0);
  try {
    gram(DotProductKernel::modified_relu(), X);
    FAIL() << "expected SingularGramError";
  } catch (const SingularGramError& e) {
    EXPECT_NE(std::string(e.what()).find('0'), std::string::npos);
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos);
  }
}

TEST(Gram, DistinctPointsPositiveDefinite) {
  const GramSystem G = gram(DotProductKernel::modified_relu(), lifted_sphere(50, 3, 2));
  EXPECT_GT(G.lambda_min, 0.0);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G.H, Eigen::EigenvaluesOnly);
  EXPECT_NEAR(G.lambda_min, es.eigenvalues()(0), 1e-12);
}

TEST(Gram, SizeCap) {
  EXPECT_THROW(gram(DotProductKernel::modified_relu(), Eigen::MatrixXd::Ones(2001, 2)),
               DomainError);
}

TEST(GenBound, Arithmetic) {
  const double b = gen_bound(2.0, 2, 1.0, 0.05);
  const double log_term = std::sqrt(std::max(std::log(2.0 / 0.05), 1.0) / 2.0);
  EXPECT_NEAR(b, std::sqrt(2.0) + log_term, 1e-12);
  EXPECT_GT(gen_bound(3.0, 100, 0.1, 0.05), gen_bound(3.0, 200, 0.1, 0.05));
  const double t1 = gen_bound(3.0, 100, 1e9, 0.9) - std::sqrt(1.0 / 100);
  const double t2 = gen_bound(6.0, 100, 1e9, 0.9) - std::sqrt(1.0 / 100);
  EXPECT_NEAR(t2 / t1, std::sqrt(2.0), 1e-12);
}

TEST(KernelRegression, InterpolatesAndZeroLabels) {
  const Eigen::MatrixXd X = lifted_sphere(40, 4, 3);
  const auto kernel = DotProductKernel::modified_relu();
  const GramSystem G = gram(kernel, X);
  Eigen::VectorXd y(40);
  for (int i = 0; i < 40; ++i) y(i) = std::sin(3.0 * X(i, 0)) + X(i, 1);
  const Eigen::VectorXd alpha = solve_min_norm(G, y);
  const Eigen::VectorXd fitted = predict(alpha, X, kernel, X);
  EXPECT_LT((fitted - y).cwiseAbs().maxCoeff(), 1e-8);
  const Eigen::VectorXd zero = solve_min_norm(G, Eigen::VectorXd::Zero(40));
  EXPECT_EQ(predict(zero, X, kernel, lifted_sphere(5, 4, 9)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(KernelRegression, MonomialComplexityBelowLemmaBound) {
  const auto kernel = DotProductKernel::modified_relu();
  const auto& b = kernel.cached_coeffs().b;
  std::mt19937_64 gen(21);
  std::normal_distribution<double> normal;
  for (int p = 1; p <= 3; ++p) {
    const Eigen::MatrixXd X = lifted_sphere(120, 4, 100 + p);
    Eigen::VectorXd y = Eigen::VectorXd::Ones(120);
    double prod = 1.0;
    for (int i = 0; i < p; ++i) {
      Eigen::VectorXd beta(5);
      for (int c = 0; c < 5; ++c) beta(c) = normal(gen);
      y = y.cwiseProduct(X * beta);
      prod *= beta.squaredNorm();
    }
    const double c = complexity(gram(kernel, X), y);
    EXPECT_LE(c, prod / b[static_cast<std::size_t>(p)] * (1 + 1e-6)) << "p=" << p;
  }
}

TEST(RandomFeatures, MinNormIdentity) {
  const Eigen::MatrixXd X = lifted_sphere(60, 3, 4);
  const Eigen::MatrixXd h = random_features(X, 300, Activation::kRelu, 1.0, 7);
  Eigen::VectorXd y(60);
  for (int i = 0; i < 60; ++i) y(i) = X(i, 0) * X(i, 1);
  const Eigen::VectorXd w = min_norm_least_squares(h, y);
  EXPECT_LT((h * w - y).norm(), 1e-8 * y.norm());
  const Eigen::MatrixXd hh = h * h.transpose();
  const double norm_identity = y.dot(hh.ldlt().solve(y));
  EXPECT_NEAR(w.squaredNorm(), norm_identity, 1e-6 * norm_identity);
}

TEST(RandomFeatures, TallSystemMatchesNormalEquations) {
  const Eigen::MatrixXd X = lifted_sphere(900, 3, 5);
  const RandomFeatureMap map(4, 40, Activation::kRelu, 1.0, 3);
  Eigen::VectorXd y(900);
  for (int i = 0; i < 900; ++i) y(i) = X(i, 0) - X(i, 2) * X(i, 1);
  const RandomFeatureModel model = fit_top_layer(map, X, y, 128);
  const Eigen::MatrixXd h = map.features(X);
  // Minimum-norm least squares via a full SVD of the stacked features.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd w = svd.solve(y);
  EXPECT_LT((model.predict(X) - h * w).norm(), 1e-8 * y.norm());
  EXPECT_NEAR((h * model.w - y).norm(), (h * w - y).norm(), 1e-10 * y.norm());
}

TEST(RandomFeatures, KernelConcentration) {
  const Eigen::MatrixXd X = lifted_sphere(4, 3, 6);
  const int m = 100000;
  const Eigen::MatrixXd h = random_features(X, m, Activation::kRelu, 1.0, 8);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Eigen::ArrayXd prod = h.row(i).array() * h.row(j).array();
      const double mean = prod.mean();
      const double se = std::sqrt((prod - mean).square().sum() / (m - 1) / m);
      Eigen::VectorXd a = X.row(i).transpose(), b = X.row(j).transpose();
      const double ref = oracle::arccos1(std::span<const double>(a.data(), a.size()),
                                         std::span<const double>(b.data(), b.size()));
      EXPECT_LE(std::fabs(mean - ref), 3.0 * se) << i << "," << j;
    }
  }
}

TEST(RandomFeatures, Deterministic) {
  const Eigen::MatrixXd X = lifted_sphere(5, 2, 1);
  EXPECT_EQ(random_features(X, 20, Activation::kExponential, 0.5, 3),
            random_features(X, 20, Activation::kExponential, 0.5, 3));
}

TEST(Sgd, MatchesDirectResidual) {
  // High input dimension keeps h^T h well conditioned.
  const Eigen::MatrixXd X = lifted_sphere(200, 40, 7);
  const Eigen::MatrixXd h = random_features(X, 20, Activation::kRelu, 1.0, 2);
  Eigen::VectorXd y(200);
  for (int i = 0; i < 200; ++i) y(i) = X(i, 0) * X(i, 0) - X(i, 1);
  const Eigen::VectorXd w = min_norm_least_squares(h, y);
  const double direct = (h * w - y).norm() / y.norm();
  SgdOptions opt;
  opt.tolerance = 1e-10;
  opt.max_epochs = 200000;
  const SgdResult s = sgd_top_layer(h, y, opt);
  EXPECT_NEAR(s.relative_residual, direct, 1e-3);
}

TEST(Metrics, Examples) {
  const std::vector<double> y{0.0, 1.0}, p{0.5, 0.5};
  EXPECT_EQ(rmse(y, y), 0.0);
  EXPECT_DOUBLE_EQ(rmse(p, y), 0.5);
  EXPECT_DOUBLE_EQ(normalized_rmse(p, y), 0.5);
  const std::vector<double> y3{0.0, 3.0}, p3{1.5, 1.5};
  EXPECT_DOUBLE_EQ(normalized_rmse(p3, y3), 0.5);
  const std::vector<double> flat{1.0, 1.0};
  EXPECT_THROW(normalized_rmse(p, flat), DomainError);
}

TEST(Results, RowFormat) {
  ResultRow row;
  row.k = 5;
  row.model = "relu-net";
  row.kernel = "random-features(relu)";
  row.n_train = 10;
  row.n_test = 2;
  row.width = 8;
  row.seed = 1;
  row.rmse = 0.25;
  row.normalized_rmse = 0.125;
  EXPECT_EQ(format_result_row(row), "5,relu-net,random-features(relu),10,2,8,1,0.25,0.125,,");
  EXPECT_EQ(results_header(),
            "k,model,kernel,n_train,n_test,width,seed,rmse,normalized_rmse,complexity,lambda0");
}

}  // namespace
}  // namespace gravbound
