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

#ifndef GRAVBOUND_BIVARIATE_SERIES_HPP_
#define GRAVBOUND_BIVARIATE_SERIES_HPP_

#include <vector>

#include "gravbound/aux_series.hpp"

namespace gravbound {

// Auxiliary series in two variables, sum_{i+j<=D} c_ij x^i y^j with
// c_ij >= 0, stored as a dense triangle. Converges on the polydisc
// |x|, |y| < radius.
class BivariateAuxSeries {
 public:
  static constexpr int kDefaultTotalDegree = 64;

  explicit BivariateAuxSeries(int total_degree = kDefaultTotalDegree,
                              double radius = kInfiniteRadius);

  // Stores |value| at x^i y^j. Throws DomainError if i + j > total_degree().
  BivariateAuxSeries& set(int i, int j, double value);

  double coeff(int i, int j) const;
  int total_degree() const { return total_degree_; }
  double declared_radius() const { return radius_; }

  double eval(double x, double y) const;
  double partial_x(double x, double y) const;
  double partial_y(double x, double y) const;

 private:
  std::size_t index(int i, int j) const;
  void check_point(double x, double y) const;

  int total_degree_;
  double radius_;
  std::vector<double> coeffs_;
};

}  // namespace gravbound

#endif  // GRAVBOUND_BIVARIATE_SERIES_HPP_
