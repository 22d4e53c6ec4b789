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

// Learnability bounds for analytic targets built from auxiliary series.
//
// Every function returns sqrt(M) where O((M + log(1/delta)) / eps^2) samples
// suffice for a kernel whose coefficients satisfy b_k >= k^-2 (except
// kernel_weighted_bound, which takes the kernel schedule explicitly).
// Arguments outside the radius of convergence throw DivergenceError.

#ifndef GRAVBOUND_CALCULUS_HPP_
#define GRAVBOUND_CALCULUS_HPP_

#include <span>
#include <vector>

#include "gravbound/aux_series.hpp"
#include "gravbound/bivariate_series.hpp"
#include "gravbound/bound_report.hpp"
#include "gravbound/schedule.hpp"

namespace gravbound {

// One term a_v * prod_i (beta_{v,i} . x) of a multivariate power series,
// described by the coefficient and the norms ||beta_{v,i}||. The degree is
// beta_norms.size().
struct MonomialTerm {
  double coefficient = 0.0;
  std::vector<double> beta_norms;
};

// g(beta . x): beta * g~'(beta) + g~(0).
BoundReport univariate_bound(const AuxSeries& g, double beta,
                             double delta = kDefaultDelta);
BoundReport univariate_bound(std::span<const double> g_coeffs, double beta,
                             double radius = kInfiniteRadius,
                             double delta = kDefaultDelta);

// prod_i (beta_i . x): p * prod_i beta_i. An empty list is the constant 1
// and is handed to univariate_bound.
BoundReport monomial_bound(std::span<const double> betas,
                           double delta = kDefaultDelta);

// sum_k b_k^{-1/2} |a_k| beta^k, accumulated in log space. Throws
// UnlearnableTermError when b_k = 0 for some a_k != 0.
BoundReport kernel_weighted_bound(std::span<const double> g_coeffs,
                                  double beta,
                                  const CoefficientSchedule& schedule,
                                  double delta = kDefaultDelta);

// The induced series a~_k = sum_{v in V_k} |a_v| prod_i beta_{v,i}.
AuxSeries induced_series(std::span<const MonomialTerm> terms);

// g~'(1) + g~(0) for the induced series of `terms` (or a given g~).
BoundReport multivariate_bound(std::span<const MonomialTerm> terms,
                               double delta = kDefaultDelta);
BoundReport multivariate_bound(const AuxSeries& g, double delta = kDefaultDelta);

// g~'(1) h~(1) + g~(1) h~'(1) + g~(0) h~(0).
BoundReport product_bound(const AuxSeries& g, const AuxSeries& h,
                          double delta = kDefaultDelta);

// prod_i g_i(beta_i . x) by folding the product rule over the factors:
// d/dy prod_i g~_i(beta_i y) at y = 1, plus prod_i g~_i(0).
BoundReport product_family_bound(std::span<const AuxSeries> factors,
                                 std::span<const double> betas,
                                 double delta = kDefaultDelta);

// g~'(h~(1)) h~'(1) + g~(h~(0)).
BoundReport chain_bound(const AuxSeries& g, const AuxSeries& h,
                        double delta = kDefaultDelta);

// d/dy f~(g~(y), h~(y)) at y = 1 plus f~(g~(0), h~(0)).
BoundReport bivariate_chain_bound(const BivariateAuxSeries& f,
                                  const AuxSeries& g, const AuxSeries& h,
                                  double delta = kDefaultDelta);

}  // namespace gravbound

#endif  // GRAVBOUND_CALCULUS_HPP_
