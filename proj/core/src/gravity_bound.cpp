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

#include "gravbound/gravity_bound.hpp"

#include <cmath>
#include <limits>
#include <iostream>
#include <numbers>
#include <sstream>

#include "gravbound/aux_series.hpp"
#include "gravbound/calculus.hpp"
#include "gravbound/errors.hpp"

namespace gravbound {
namespace {

void check_gravity_args(double R, int k) {
  if (!(R >= 1.0) || !std::isfinite(R)) throw DomainError("R must be >= 1");
  if (k < 2) throw DomainError("k must be >= 2");
}

double log_ratio_k2_eps(int k, double eps) {
  return 2.0 * std::log(static_cast<double>(k)) - std::log(eps);
}

}  // namespace

double inverse_cube_series_coeff(int n) {
  if (n < 0) throw DomainError("series index must be nonnegative");
  double c = 1.0;
  for (int i = 0; i < n; ++i) c *= (2.0 * i + 3.0) / (2.0 * i + 2.0);
  return c;
}

double inverse_cube_remainder(int d, double x) {
  if (d < 0) throw DomainError("degree must be nonnegative");
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("|u| must lie in [0, 1)");
  if (x == 0.0) return 0.0;
  return inverse_cube_series_coeff(d + 1) *
         std::exp((d + 1) * std::log(x) - (2.5 + d) * std::log1p(-x));
}

double inverse_cube_remainder_asymptotic(int d, double x) {
  if (d < 0) throw DomainError("degree must be nonnegative");
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("|u| must lie in [0, 1)");
  if (x == 0.0) return 0.0;
  return std::sqrt(std::numbers::pi * d) *
         std::exp((d + 1) * std::log(x) - (2.5 + d) * std::log1p(-x));
}

double TaylorApprox::max_abs_u() const {
  const double lo = r_min * r_min;
  const double hi = r_max * r_max;
  return (hi - lo) / (hi + lo);
}

double TaylorApprox::eval(double r_sq) const {
  const double u = 1.0 - r_sq / a_sq;
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
  return acc;
}

TaylorApprox inverse_cube_taylor(double r_min, double r_max, int d) {
  if (!(r_min > 0.0) || !std::isfinite(r_max)) {
    throw DomainError("r_min must be positive and r_max finite");
  }
  if (r_min > r_max) throw DomainError("r_min must not exceed r_max");
  if (d < 0) throw DomainError("degree must be nonnegative");

  TaylorApprox t;
  t.degree = d;
  t.r_min = r_min;
  t.r_max = r_max;
  t.a_sq = (r_min * r_min + r_max * r_max) / 2.0;
  const double inv_a3 = 1.0 / (t.a_sq * std::sqrt(t.a_sq));
  t.coeffs.resize(static_cast<std::size_t>(d) + 1);
  double c = 1.0;
  for (int n = 0; n <= d; ++n) {
    t.coeffs[static_cast<std::size_t>(n)] = inv_a3 * c;
    c *= (2.0 * n + 3.0) / (2.0 * n + 2.0);
  }
  const double x = t.max_abs_u();
  t.error_bound = inv_a3 * inverse_cube_remainder(d, x);
  double s0 = 0.0;
  double s1 = 0.0;
  double xn = 1.0;
  for (int n = 0; n <= d; ++n) {
    const double cn = t.coeffs[static_cast<std::size_t>(n)];
    s0 += cn * xn;
    if (n + 1 <= d) s1 += (n + 1) * t.coeffs[static_cast<std::size_t>(n) + 1] * xn;
    xn *= x;
  }
  constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0;
  const double m = 2.0 * d + 2.0;
  t.rounding_bound = m * kEps / (1.0 - m * kEps) * s0 + 4.0 * kEps * s1;
  return t;
}

DegreeChoice choose_gravity_degree(double R, int k, double eps) {
  check_gravity_args(R, k);
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  const double log_term = log_ratio_k2_eps(k, eps);
  if (!(log_term > 0.0)) return {1, true};
  return {static_cast<int>(std::ceil(R * R * log_term)), false};
}

int gravity_degree(double R, int k, double eps) {
  const DegreeChoice c = choose_gravity_degree(R, k, eps);
  if (c.clamped) {
    std::cerr << "warning: eps >= k^2 gives a nonpositive degree; using d = 1\n";
  }
  return c.degree;
}

double gravity_exponent(double R, int k, double eps) {
  check_gravity_args(R, k);
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  return R * R * log_ratio_k2_eps(k, eps);
}

double kernel_penalty_log(const CoefficientSchedule& schedule, double d) {
  if (!(d > 0.0)) throw DomainError("degree must be positive");
  const int top = static_cast<int>(std::ceil(d));
  const double log_b = schedule.log_b(top);
  if (log_b == -std::numeric_limits<double>::infinity()) {
    std::ostringstream msg;
    msg << "kernel '" << schedule.name() << "' has b_" << top << " = 0";
    throw UnlearnableTermError(msg.str());
  }
  return -0.5 * (2.0 * std::log(d) + log_b);
}

BoundReport gravity_bound_log(double R, int k, double eps,
                              const CoefficientSchedule* kernel_penalty,
                              double delta) {
  check_gravity_args(R, k);
  const double k2 = static_cast<double>(k) * k;
  if (!(eps > 0.0 && eps < k2)) throw DomainError("eps must lie in (0, k^2)");
  const double d = gravity_exponent(R, k, eps);
  double log_sqrt_m = -0.5 * std::log(static_cast<double>(k)) +
                      1.5 * std::log(d) + d * std::log(24.0 * k);
  std::ostringstream note;
  note << "exponent d = R^2 ln(k^2/eps) = " << d << " (real-valued)";
  std::ostringstream penalty_note;
  if (kernel_penalty != nullptr) {
    const double p = kernel_penalty_log(*kernel_penalty, d);
    log_sqrt_m += p;
    penalty_note << "kernel '" << kernel_penalty->name()
                 << "' adds " << p << " to log sqrt(M)";
  }
  BoundReport out = BoundReport::from_log(BoundRule::kGravity, log_sqrt_m, delta)
                        .with_note(note.str());
  if (kernel_penalty != nullptr) out = out.with_note(penalty_note.str());
  return out;
}

GravityCrossCheck gravity_cross_check(double R, int k, double eps) {
  GravityCrossCheck out;
  out.degree = choose_gravity_degree(R, k, eps).degree;
  out.r_max = std::sqrt(2.0 / k);
  const double r_min = out.r_max / R;
  out.a_sq = (r_min * r_min + out.r_max * out.r_max) / 2.0;
  out.log_sqrt_m_closed_form = gravity_bound_log(R, k, eps).log_sqrt_M();

  const int d = out.degree;
  const double inv_a2 = 1.0 / out.a_sq;
  const double lead = std::sqrt(std::numbers::pi * d);
  const double log_scale =
      0.5 * std::log(8.0) + std::log(static_cast<double>(k)) -
      3.0 * std::log(out.r_max);

  // A = d/dy [f~_d(h~(y)) k~(y)] at 1; k~(0) = 0 so the product rule's
  // constant term vanishes and product_bound returns A itself.
  double log_a = 0.0;
  const double log_growth = d * std::log1p(6.0 * inv_a2);
  if (log_growth < 600.0) {
    std::vector<double> f(static_cast<std::size_t>(d) + 1);
    double binom = 1.0;
    for (int n = 0; n <= d; ++n) {
      f[static_cast<std::size_t>(n)] = lead * binom * std::pow(inv_a2, n);
      binom = binom * (d - n) / (n + 1.0);
    }
    const AuxSeries f_tilde(std::move(f), kInfiniteRadius,
                            AuxSeries::Extent::kComplete);
    const AuxSeries h_tilde({0.0, 0.0, 6.0}, kInfiniteRadius,
                            AuxSeries::Extent::kComplete);
    const AuxSeries k_tilde({0.0, std::sqrt(2.0)}, kInfiniteRadius,
                            AuxSeries::Extent::kComplete);
    const AuxSeries composed = aux_compose(f_tilde, h_tilde, 2 * d);
    log_a = std::log(*product_bound(composed, k_tilde).sqrt_M());
    out.used_series_ops = true;
  } else {
    // f~_d'(6) 12 sqrt(2) + f~_d(6) sqrt(2), factored in logs.
    const double base = 1.0 + 6.0 * inv_a2;
    log_a = std::log(lead) + 0.5 * std::log(2.0) + (d - 1) * std::log(base) +
            std::log(12.0 * d * inv_a2 + base);
  }
  out.log_sqrt_m_recomputed = log_scale + log_a;
  out.log_ratio = out.log_sqrt_m_recomputed - out.log_sqrt_m_closed_form;
  return out;
}

}  // namespace gravbound
