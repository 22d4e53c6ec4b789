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

#ifndef GRAVBOUND_AUX_SERIES_HPP_
#define GRAVBOUND_AUX_SERIES_HPP_

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace gravbound {

inline constexpr double kInfiniteRadius = std::numeric_limits<double>::infinity();

// A truncated sum together with an estimate of what the truncation and the
// floating point accumulation left out.
struct SeriesValue {
  double value = 0.0;
  double uncertainty = 0.0;
};

// Power series with nonnegative coefficients, the "auxiliary" series of an
// analytic function: coefficient k is |a_k|. Immutable after construction.
//
// A series is either complete (a polynomial, the held coefficients are the
// whole series) or truncated (the held coefficients are a prefix of an
// infinite series). Only truncated series carry a tail estimate and are
// subject to the growing-terms divergence test.
class AuxSeries {
 public:
  enum class Extent { kComplete, kTruncated };

  // The zero series.
  AuxSeries() = default;

  AuxSeries(std::vector<double> coeffs, double radius, Extent extent);

  // Coefficients of y^0 .. y^max_degree taken from `coeff(k)` (absolute
  // values are applied). The result is a truncated series.
  static AuxSeries from_generator(const std::function<double(int)>& coeff,
                                  int max_degree, double radius);

  std::span<const double> coeffs() const { return coeffs_; }
  double coeff(int k) const;
  // Highest held degree; -1 for the zero series.
  int tail_truncated_at() const { return static_cast<int>(coeffs_.size()) - 1; }
  double declared_radius() const { return radius_; }
  Extent extent() const { return extent_; }
  bool is_truncated() const { return extent_ == Extent::kTruncated; }

  SeriesValue eval(double y) const;
  SeriesValue deriv_eval(double y) const;

 private:
  std::vector<double> coeffs_;
  double radius_ = kInfiniteRadius;
  Extent extent_ = Extent::kComplete;
};

// Takes absolute values of `raw_coeffs`. A finite `radius` marks the result
// as a truncation of an infinite series; an infinite radius marks it as a
// polynomial. Use the AuxSeries constructor to state the extent explicitly.
AuxSeries aux_from_coeffs(std::span<const double> raw_coeffs, double radius);

// Sum_k c_k y^k. Throws DomainError for y < 0 and DivergenceError for
// y >= declared radius or when a truncated series' last 50 terms keep growing.
SeriesValue aux_eval(const AuxSeries& s, double y);

// Sum_k k c_k y^(k-1), same error contract as aux_eval.
SeriesValue aux_deriv_eval(const AuxSeries& s, double y);

// Coefficients of g(y) h(y) up to max_degree.
AuxSeries aux_product(const AuxSeries& g, const AuxSeries& h, int max_degree);

// Coefficients of outer(inner(y)) up to max_degree. The radius of the
// result is the largest y with inner(y) < radius(outer), found by bisection.
AuxSeries aux_compose(const AuxSeries& outer, const AuxSeries& inner,
                      int max_degree);

// g(beta * y).
AuxSeries aux_scale_argument(const AuxSeries& g, double beta);

}  // namespace gravbound

#endif  // GRAVBOUND_AUX_SERIES_HPP_
