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

#include "gravbound/bivariate_series.hpp"

#include <cmath>
#include <sstream>

#include "detail/summation.hpp"
#include "gravbound/errors.hpp"

namespace gravbound {

BivariateAuxSeries::BivariateAuxSeries(int total_degree, double radius)
    : total_degree_(total_degree), radius_(radius) {
  if (total_degree < 0) throw DomainError("total degree must be >= 0");
  if (!(radius > 0.0)) throw DomainError("radius must be positive");
  const auto n = static_cast<std::size_t>(total_degree + 1);
  coeffs_.assign(n * (n + 1) / 2, 0.0);
}

// Row i holds j = 0 .. D - i; rows are laid out back to back.
std::size_t BivariateAuxSeries::index(int i, int j) const {
  const auto d = static_cast<std::size_t>(total_degree_);
  const auto ii = static_cast<std::size_t>(i);
  const std::size_t row_start = ii * (d + 1) - ii * (ii - 1) / 2;
  return row_start + static_cast<std::size_t>(j);
}

BivariateAuxSeries& BivariateAuxSeries::set(int i, int j, double value) {
  if (i < 0 || j < 0 || i + j > total_degree_) {
    std::ostringstream msg;
    msg << "term x^" << i << " y^" << j << " exceeds total degree "
        << total_degree_;
    throw DomainError(msg.str());
  }
  if (!std::isfinite(value)) throw DomainError("coefficient must be finite");
  coeffs_[index(i, j)] = std::abs(value);
  return *this;
}

double BivariateAuxSeries::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > total_degree_) return 0.0;
  return coeffs_[index(i, j)];
}

void BivariateAuxSeries::check_point(double x, double y) const {
  if (!(x >= 0.0) || !(y >= 0.0)) {
    throw DomainError("bivariate auxiliary series needs nonnegative arguments");
  }
  if (!(x < radius_) || !(y < radius_)) {
    std::ostringstream msg;
    msg << "bivariate series evaluated at (" << x << ", " << y
        << ") outside radius " << radius_;
    throw DivergenceError(msg.str());
  }
}

double BivariateAuxSeries::eval(double x, double y) const {
  check_point(x, y);
  detail::CompensatedSum acc;
  for (int i = 0; i <= total_degree_; ++i) {
    const double xi = std::pow(x, i);
    for (int j = 0; i + j <= total_degree_; ++j) {
      const double c = coeffs_[index(i, j)];
      if (c != 0.0) acc.add(c * xi * std::pow(y, j));
    }
  }
  const double v = acc.value();
  if (!std::isfinite(v)) throw DivergenceError("bivariate series diverges");
  return v;
}

double BivariateAuxSeries::partial_x(double x, double y) const {
  check_point(x, y);
  detail::CompensatedSum acc;
  for (int i = 1; i <= total_degree_; ++i) {
    const double xi = i * std::pow(x, i - 1);
    for (int j = 0; i + j <= total_degree_; ++j) {
      const double c = coeffs_[index(i, j)];
      if (c != 0.0) acc.add(c * xi * std::pow(y, j));
    }
  }
  const double v = acc.value();
  if (!std::isfinite(v)) throw DivergenceError("bivariate series diverges");
  return v;
}

double BivariateAuxSeries::partial_y(double x, double y) const {
  check_point(x, y);
  detail::CompensatedSum acc;
  for (int i = 0; i <= total_degree_; ++i) {
    const double xi = std::pow(x, i);
    for (int j = 1; i + j <= total_degree_; ++j) {
      const double c = coeffs_[index(i, j)];
      if (c != 0.0) acc.add(c * xi * j * std::pow(y, j - 1));
    }
  }
  const double v = acc.value();
  if (!std::isfinite(v)) throw DivergenceError("bivariate series diverges");
  return v;
}

}  // namespace gravbound
