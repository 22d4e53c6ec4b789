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

#include "gravbound/regression.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gravbound/errors.hpp"
#include "gravbound/parallel.hpp"
#include "gravbound/table_io.hpp"

namespace gravbound {
namespace {

constexpr std::array<double, 5> kJitterLadder{0.0, 1e-12, 1e-10, 1e-8, 1e-6};

std::span<const double> row_span(const Eigen::MatrixXd& X, Eigen::Index r,
                                 std::vector<double>& buf) {
  buf.resize(static_cast<std::size_t>(X.cols()));
  for (Eigen::Index c = 0; c < X.cols(); ++c) buf[static_cast<std::size_t>(c)] = X(r, c);
  return buf;
}

void check_duplicates(const Eigen::MatrixXd& X) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(X.rows()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  auto less = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
      if (X(a, c) != X(b, c)) return X(a, c) < X(b, c);
    }
    return false;
  };
  std::sort(order.begin(), order.end(), less);
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (!less(order[i - 1], order[i]) && !less(order[i], order[i - 1])) {
      std::ostringstream msg;
      msg << "inputs " << std::min(order[i - 1], order[i]) << " and "
          << std::max(order[i - 1], order[i]) << " are identical; H is singular";
      throw SingularGramError(msg.str());
    }
  }
}

}  // namespace

Eigen::VectorXd GramSystem::solve(const Eigen::VectorXd& y) const {
  if (y.size() != H.rows()) throw DomainError("label vector has the wrong length");
  return factor.solve(y);
}

GramSystem factor_gram(Eigen::MatrixXd H, bool compute_lambda_min) {
  if (H.rows() != H.cols()) throw DomainError("Gram matrix must be square");
  GramSystem G;
  G.H = std::move(H);
  const Eigen::Index n = G.H.rows();
  G.lambda_min = std::numeric_limits<double>::quiet_NaN();
  if (compute_lambda_min && n > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G.H, Eigen::EigenvaluesOnly);
    G.lambda_min = eig.eigenvalues()(0);
  }
  if (n == 0) return G;
  const double scale = G.H.trace() / static_cast<double>(n);
  for (double level : kJitterLadder) {
    const double jitter = level * scale;
    Eigen::MatrixXd shifted = G.H;
    shifted.diagonal().array() += jitter;
    G.factor.compute(shifted);
    if (G.factor.info() == Eigen::Success) {
      G.jitter = jitter;
      G.jitter_level = level;
      return G;
    }
  }
  std::ostringstream msg;
  msg << "Gram matrix did not factor even with jitter 1e-6 * trace/n; lambda_0 = "
      << G.lambda_min;
  throw IllConditionedError(msg.str());
}

GramSystem gram(const DotProductKernel& kernel, const Eigen::MatrixXd& X,
                bool compute_lambda_min, int threads) {
  const Eigen::Index n = X.rows();
  if (n > kMaxExactGramSize) {
    std::ostringstream msg;
    msg << "exact Gram solves are limited to n <= " << kMaxExactGramSize
        << " (got " << n << "); use the random-feature path";
    throw DomainError(msg.str());
  }
  if (!X.allFinite()) throw DomainError("inputs must be finite");
  check_duplicates(X);
  Eigen::MatrixXd H(n, n);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t b, std::size_t e) {
    std::vector<double> xa;
    std::vector<double> xb;
    for (auto a = static_cast<Eigen::Index>(b); a < static_cast<Eigen::Index>(e); ++a) {
      const auto ra = row_span(X, a, xa);
      for (Eigen::Index c = 0; c <= a; ++c) H(a, c) = kernel.eval(ra, row_span(X, c, xb));
    }
  });
  H.triangularView<Eigen::StrictlyUpper>() = H.transpose();
  return factor_gram(std::move(H), compute_lambda_min);
}

double complexity(const GramSystem& G, const Eigen::VectorXd& y) {
  return std::max(0.0, y.dot(G.solve(y)));
}

double gen_bound(double complexity, int n, double lambda0, double delta) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (!(lambda0 > 0.0)) throw DomainError("lambda0 must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  if (!(complexity >= 0.0)) throw DomainError("complexity must be nonnegative");
  const double nd = n;
  const double log_term = std::max(std::log(nd / (lambda0 * delta)), 1.0);
  return std::sqrt(2.0 * complexity / nd) + std::sqrt(log_term / nd);
}

Eigen::VectorXd solve_min_norm(const GramSystem& G, const Eigen::VectorXd& y) {
  return G.solve(y);
}

double predict(const Eigen::VectorXd& alpha, const Eigen::MatrixXd& X_train,
               const DotProductKernel& kernel, std::span<const double> x) {
  if (alpha.size() != X_train.rows()) throw DomainError("alpha and X_train differ in size");
  std::vector<double> buf;
  double s = 0.0;
  for (Eigen::Index a = 0; a < X_train.rows(); ++a) {
    s += alpha(a) * kernel.eval(row_span(X_train, a, buf), x);
  }
  return s;
}

Eigen::VectorXd predict(const Eigen::VectorXd& alpha, const Eigen::MatrixXd& X_train,
                        const DotProductKernel& kernel, const Eigen::MatrixXd& X_test,
                        int threads) {
  Eigen::VectorXd out(X_test.rows());
  parallel_for(static_cast<std::size_t>(X_test.rows()), threads,
               [&](std::size_t b, std::size_t e) {
                 std::vector<double> buf;
                 for (auto i = static_cast<Eigen::Index>(b);
                      i < static_cast<Eigen::Index>(e); ++i) {
                   out(i) = predict(alpha, X_train, kernel, row_span(X_test, i, buf));
                 }
               });
  return out;
}

double rmse(std::span<const double> predictions, std::span<const double> labels) {
  if (predictions.size() != labels.size()) {
    throw DomainError("predictions and labels differ in length");
  }
  if (labels.empty()) throw DomainError("rmse of an empty set");
  double s = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double d = predictions[i] - labels[i];
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(labels.size()));
}

double normalized_rmse(std::span<const double> predictions,
                       std::span<const double> labels) {
  const double e = rmse(predictions, labels);
  const auto [lo, hi] = std::minmax_element(labels.begin(), labels.end());
  if (!(*hi > *lo)) throw DomainError("labels are constant; range normalization undefined");
  return e / (*hi - *lo);
}

std::string results_header() {
  return "k,model,kernel,n_train,n_test,width,seed,rmse,normalized_rmse,complexity,lambda0";
}

std::string format_result_row(const ResultRow& row) {
  std::ostringstream s;
  s << row.k << ',' << row.model << ',' << row.kernel << ',' << row.n_train << ','
    << row.n_test << ',' << row.width << ',' << row.seed << ','
    << format_double(row.rmse) << ',' << format_double(row.normalized_rmse) << ',';
  if (row.complexity) s << format_double(*row.complexity);
  s << ',';
  if (row.lambda0) s << format_double(*row.lambda0);
  return s.str();
}

}  // namespace gravbound
