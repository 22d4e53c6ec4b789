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

#include "gravbound/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "detail/summation.hpp"
#include "gravbound/errors.hpp"

namespace gravbound {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// exp() stays finite below this.
constexpr double kLogLinearLimit = 700.0;

void check_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw DomainError("beta norm must be a finite nonnegative number");
  }
}

double value_at(const AuxSeries& s, double y) { return s.eval(y).value; }
double deriv_at(const AuxSeries& s, double y) { return s.deriv_eval(y).value; }

}  // namespace

BoundReport univariate_bound(const AuxSeries& g, double beta, double delta) {
  check_beta(beta);
  const double sqrt_m = beta * deriv_at(g, beta) + g.coeff(0);
  return BoundReport::from_value(BoundRule::kUnivariate, sqrt_m, delta);
}

BoundReport univariate_bound(std::span<const double> g_coeffs, double beta,
                             double radius, double delta) {
  return univariate_bound(aux_from_coeffs(g_coeffs, radius), beta, delta);
}

BoundReport monomial_bound(std::span<const double> betas, double delta) {
  if (betas.empty()) {
    const double one = 1.0;
    return univariate_bound(std::span<const double>(&one, 1), 0.0,
                            kInfiniteRadius, delta)
        .with_note("empty monomial: constant 1");
  }
  double prod = 1.0;
  for (double b : betas) {
    check_beta(b);
    prod *= b;
  }
  return BoundReport::from_value(BoundRule::kMonomial,
                                 static_cast<double>(betas.size()) * prod, delta);
}

BoundReport kernel_weighted_bound(std::span<const double> g_coeffs, double beta,
                                  const CoefficientSchedule& schedule,
                                  double delta) {
  check_beta(beta);
  const double log_beta = std::log(beta);  // -inf at beta = 0
  std::vector<double> log_terms;
  log_terms.reserve(g_coeffs.size());
  for (std::size_t k = 0; k < g_coeffs.size(); ++k) {
    const double a = std::abs(g_coeffs[k]);
    if (a == 0.0) continue;
    if (!std::isfinite(a)) throw DomainError("coefficient is not finite");
    const int degree = static_cast<int>(k);
    const double log_b = schedule.log_b(degree);
    if (log_b == -kInf) {
      std::ostringstream msg;
      msg << "kernel '" << schedule.name() << "' has b_" << degree
          << " = 0 but the target has a nonzero degree-" << degree << " term";
      throw UnlearnableTermError(msg.str());
    }
    if (log_b == kInf) continue;
    const double power = degree == 0 ? 0.0 : degree * log_beta;
    log_terms.push_back(-0.5 * log_b + std::log(a) + power);
  }
  if (log_terms.empty()) {
    return BoundReport::from_value(BoundRule::kKernelWeighted, 0.0, delta);
  }
  const double top = *std::max_element(log_terms.begin(), log_terms.end());
  if (top < kLogLinearLimit) {
    detail::CompensatedSum acc;
    for (double t : log_terms) acc.add(std::exp(t));
    if (std::isfinite(acc.value())) {
      return BoundReport::from_value(BoundRule::kKernelWeighted, acc.value(),
                                     delta);
    }
  }
  double log_sum = -kInf;
  for (double t : log_terms) log_sum = detail::log_add(log_sum, t);
  return BoundReport::from_log(BoundRule::kKernelWeighted, log_sum, delta);
}

AuxSeries induced_series(std::span<const MonomialTerm> terms) {
  std::size_t max_degree = 0;
  for (const auto& t : terms) max_degree = std::max(max_degree, t.beta_norms.size());
  std::vector<double> c(terms.empty() ? 0 : max_degree + 1, 0.0);
  for (const auto& t : terms) {
    double prod = std::abs(t.coefficient);
    for (double b : t.beta_norms) {
      check_beta(b);
      prod *= b;
    }
    c[t.beta_norms.size()] += prod;
  }
  return AuxSeries(std::move(c), kInfiniteRadius, AuxSeries::Extent::kComplete);
}

BoundReport multivariate_bound(std::span<const MonomialTerm> terms,
                               double delta) {
  return multivariate_bound(induced_series(terms), delta);
}

BoundReport multivariate_bound(const AuxSeries& g, double delta) {
  const double sqrt_m = deriv_at(g, 1.0) + g.coeff(0);
  return BoundReport::from_value(BoundRule::kMultivariate, sqrt_m, delta);
}

BoundReport product_bound(const AuxSeries& g, const AuxSeries& h, double delta) {
  const double g1 = value_at(g, 1.0);
  const double h1 = value_at(h, 1.0);
  const double sqrt_m =
      deriv_at(g, 1.0) * h1 + g1 * deriv_at(h, 1.0) + g.coeff(0) * h.coeff(0);
  return BoundReport::from_value(BoundRule::kProduct, sqrt_m, delta);
}

BoundReport product_family_bound(std::span<const AuxSeries> factors,
                                 std::span<const double> betas, double delta) {
  if (factors.size() != betas.size()) {
    throw DomainError("product family needs one beta norm per factor");
  }
  // Running value, derivative and value at zero of prod_i g~_i(beta_i y).
  double value = 1.0;
  double deriv = 0.0;
  double at_zero = 1.0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    check_beta(betas[i]);
    const double v = value_at(factors[i], betas[i]);
    const double dv = betas[i] * deriv_at(factors[i], betas[i]);
    deriv = deriv * v + value * dv;
    value *= v;
    at_zero *= factors[i].coeff(0);
  }
  return BoundReport::from_value(BoundRule::kProduct, deriv + at_zero, delta)
      .with_note("product family of " + std::to_string(factors.size()) +
                 " factors");
}

BoundReport chain_bound(const AuxSeries& g, const AuxSeries& h, double delta) {
  const double h0 = h.coeff(0);
  const double h1 = value_at(h, 1.0);
  for (double arg : {h0, h1}) {
    if (!(arg < g.declared_radius())) {
      std::ostringstream msg;
      msg << "outer series evaluated at inner value " << arg
          << " outside its radius " << g.declared_radius();
      throw DivergenceError(msg.str());
    }
  }
  const double sqrt_m = deriv_at(g, h1) * deriv_at(h, 1.0) + value_at(g, h0);
  return BoundReport::from_value(BoundRule::kChain, sqrt_m, delta);
}

BoundReport bivariate_chain_bound(const BivariateAuxSeries& f,
                                  const AuxSeries& g, const AuxSeries& h,
                                  double delta) {
  const double g1 = value_at(g, 1.0);
  const double h1 = value_at(h, 1.0);
  const double sqrt_m = f.partial_x(g1, h1) * deriv_at(g, 1.0) +
                        f.partial_y(g1, h1) * deriv_at(h, 1.0) +
                        f.eval(g.coeff(0), h.coeff(0));
  return BoundReport::from_value(BoundRule::kBivariate, sqrt_m, delta);
}

}  // namespace gravbound
