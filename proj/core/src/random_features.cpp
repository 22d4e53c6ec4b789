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

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <random>

#include "gravbound/errors.hpp"
#include "gravbound/regression.hpp"

namespace gravbound {
namespace {

// Accumulates the R factor and Q^T y of a tall matrix one row block at a
// time (TSQR), so that only an m x m triangle is ever kept.
class StreamingQr {
 public:
  explicit StreamingQr(Eigen::Index cols) : R_(0, cols), c_(0) {}

  void add(const Eigen::MatrixXd& block, const Eigen::VectorXd& y) {
    const Eigen::Index rows = R_.rows() + block.rows();
    Eigen::MatrixXd stacked(rows, R_.cols());
    stacked << R_, block;
    Eigen::VectorXd rhs(rows);
    rhs << c_, y;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(stacked);
    const Eigen::Index keep = std::min(rows, R_.cols());
    R_ = qr.matrixQR().topRows(keep).triangularView<Eigen::Upper>();
    rhs.applyOnTheLeft(qr.householderQ().transpose());
    c_ = rhs.head(keep);
  }

  Eigen::VectorXd solve() const {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(R_);
    return cod.solve(c_);
  }

 private:
  Eigen::MatrixXd R_;
  Eigen::VectorXd c_;
};

void apply_activation(Eigen::MatrixXd& Z, Activation activation) {
  if (activation == Activation::kRelu) {
    Z = Z.cwiseMax(0.0);
  } else {
    Z = Z.array().exp().matrix();
  }
}

// Largest eigenvalue of h^T h / n by power iteration.
double top_eigenvalue(const Eigen::MatrixXd& h) {
  const double n = static_cast<double>(h.rows());
  Eigen::VectorXd v = Eigen::VectorXd::Ones(h.cols()).normalized();
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXd next = h.transpose() * (h * v) / n;
    const double norm = next.norm();
    if (norm == 0.0) return 0.0;
    next /= norm;
    const bool done = std::abs(norm - lambda) <= 1e-10 * norm;
    lambda = norm;
    v = next;
    if (done) break;
  }
  return lambda;
}

}  // namespace

RandomFeatureMap::RandomFeatureMap(int input_dim, int width, Activation activation,
                                   double sigma_sq, std::uint64_t seed)
    : activation_(activation), sigma_sq_(sigma_sq), seed_(seed) {
  if (width < 1) throw DomainError("width m must be >= 1");
  if (input_dim < 1) throw DomainError("input dimension must be >= 1");
  if (!(sigma_sq > 0.0)) throw DomainError("sigma_sq must be positive");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(sigma_sq));
  W_.resize(width, input_dim);
  for (int i = 0; i < width; ++i) {
    for (int j = 0; j < input_dim; ++j) W_(i, j) = normal(gen);
  }
}

Eigen::MatrixXd RandomFeatureMap::features(const Eigen::MatrixXd& X) const {
  if (X.cols() != W_.cols()) throw DomainError("input dimension does not match the feature map");
  Eigen::MatrixXd Z = X * W_.transpose();
  apply_activation(Z, activation_);
  return Z;
}

Eigen::MatrixXd random_features(const Eigen::MatrixXd& X, int m, Activation activation,
                                double sigma_sq, std::uint64_t seed) {
  return RandomFeatureMap(static_cast<int>(X.cols()), m, activation, sigma_sq, seed)
      .features(X);
}

Eigen::VectorXd min_norm_least_squares(const Eigen::MatrixXd& h, const Eigen::VectorXd& y) {
  if (h.rows() != y.size()) throw DomainError("feature rows and labels differ in count");
  if (h.rows() <= h.cols()) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(h);
    return cod.solve(y);
  }
  constexpr Eigen::Index kBlock = 4000;
  StreamingQr qr(h.cols());
  for (Eigen::Index b = 0; b < h.rows(); b += kBlock) {
    const Eigen::Index len = std::min(kBlock, h.rows() - b);
    qr.add(h.middleRows(b, len), y.segment(b, len));
  }
  return qr.solve();
}

Eigen::VectorXd RandomFeatureModel::predict(const Eigen::MatrixXd& X) const {
  constexpr Eigen::Index kBlock = 4000;
  Eigen::VectorXd out(X.rows());
  for (Eigen::Index b = 0; b < X.rows(); b += kBlock) {
    const Eigen::Index len = std::min(kBlock, X.rows() - b);
    out.segment(b, len) = map.features(X.middleRows(b, len)) * w;
  }
  return out;
}

RandomFeatureModel fit_top_layer(const RandomFeatureMap& map, const Eigen::MatrixXd& X,
                                 const Eigen::VectorXd& y, int block_rows) {
  if (X.rows() != y.size()) throw DomainError("inputs and labels differ in count");
  if (block_rows < 1) throw DomainError("block_rows must be >= 1");
  RandomFeatureModel model{map, Eigen::VectorXd::Zero(map.width()), 0};
  StreamingQr qr(map.width());
  for (Eigen::Index b = 0; b < X.rows(); b += block_rows) {
    const Eigen::Index len = std::min<Eigen::Index>(block_rows, X.rows() - b);
    const Eigen::MatrixXd h = map.features(X.middleRows(b, len));
    if (!h.allFinite()) {
      throw DomainError("feature matrix has non-finite entries; rescale the inputs");
    }
    model.zero_feature_rows +=
        static_cast<int>((h.rowwise().squaredNorm().array() == 0.0).count());
    qr.add(h, y.segment(b, len));
  }
  if (model.zero_feature_rows > 0) {
    std::cerr << "warning: " << model.zero_feature_rows
              << " training rows have all-zero features; the fit is rank deficient\n";
  }
  model.w = qr.solve();
  return model;
}

SgdResult sgd_top_layer(const Eigen::MatrixXd& h, const Eigen::VectorXd& y,
                        const SgdOptions& options) {
  if (h.rows() != y.size()) throw DomainError("feature rows and labels differ in count");
  if (h.rows() == 0) throw DomainError("SGD needs at least one example");
  const Eigen::Index n = h.rows();
  SgdResult out;
  out.w = Eigen::VectorXd::Zero(h.cols());
  out.step = options.step > 0.0 ? options.step : 0.5 / top_eigenvalue(h);
  const Eigen::Index batch =
      options.batch_size > 0 ? std::min<Eigen::Index>(options.batch_size, n) : n;
  const double y_norm = y.norm();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::mt19937_64 gen(options.seed);
  auto residual = [&] { return y_norm > 0.0 ? (h * out.w - y).norm() / y_norm : (h * out.w).norm(); };
  out.relative_residual = residual();
  if (batch == n && n <= h.cols()) {
    // Full batch with more features than rows: keep w = h^T alpha and update
    // the residual through the n x n Gram. Same iterates, n^2 work per epoch.
    const Eigen::MatrixXd G = h * h.transpose();
    const double eta = out.step / static_cast<double>(n);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd r = -y;
    constexpr int kResync = 1024;
    for (out.epochs = 0; out.epochs < options.max_epochs; ++out.epochs) {
      if (out.relative_residual <= options.tolerance) break;
      alpha -= eta * r;
      if ((out.epochs + 1) % kResync == 0) {
        r = G * alpha - y;
      } else {
        r -= eta * (G * r);
      }
      out.relative_residual = y_norm > 0.0 ? r.norm() / y_norm : r.norm();
    }
    out.w = h.transpose() * alpha;
    out.relative_residual = residual();
    return out;
  }
  for (out.epochs = 0; out.epochs < options.max_epochs; ++out.epochs) {
    if (out.relative_residual <= options.tolerance) break;
    if (batch == n) {
      out.w -= out.step * (h.transpose() * (h * out.w - y)) / static_cast<double>(n);
    } else {
      std::shuffle(order.begin(), order.end(), gen);
      for (Eigen::Index start = 0; start < n; start += batch) {
        const Eigen::Index len = std::min(batch, n - start);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(h.cols());
        for (Eigen::Index i = start; i < start + len; ++i) {
          const Eigen::Index r = order[static_cast<std::size_t>(i)];
          g += (h.row(r).dot(out.w) - y(r)) * h.row(r).transpose();
        }
        out.w -= out.step * g / static_cast<double>(len);
      }
    }
    out.relative_residual = residual();
  }
  return out;
}

}  // namespace gravbound
