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

// Sample-complexity bound for the k-body gravitational force.
//
// The force term m_1 m_j (x_j - x_1)_1 / r^3 is made analytic by replacing
// r^-3 with a degree-d Taylor polynomial in r^2 around the midpoint
// a^2 = (r_min^2 + r_max^2) / 2 of the admissible range of r^2.

#ifndef GRAVBOUND_GRAVITY_BOUND_HPP_
#define GRAVBOUND_GRAVITY_BOUND_HPP_

#include <vector>

#include "gravbound/bound_report.hpp"
#include "gravbound/schedule.hpp"

namespace gravbound {

// f_d(r^2) = a^-3 sum_{n<=d} c_n u^n with u = 1 - r^2 / a^2, an affine
// reparametrization of a degree-d polynomial in r^2.
struct TaylorApprox {
  int degree = 0;
  double a_sq = 1.0;
  double r_min = 1.0;
  double r_max = 1.0;
  // a^-3 c_n for n = 0..degree; coefficient of u^n.
  std::vector<double> coeffs;
  // sup over r in [r_min, r_max] of |f_d(r^2) - r^-3| (Lagrange remainder).
  double error_bound = 0.0;
  // Floating-point allowance for eval(): Horner forward error plus the
  // effect of rounding r^2 and u. Compare computed errors against
  // error_bound + rounding_bound.
  double rounding_bound = 0.0;

  double eval(double r_sq) const;
  // u at the worse endpoint: (r_max^2 - r_min^2) / (r_max^2 + r_min^2).
  double max_abs_u() const;
};

// c_n = (2n+1)!! / (2n)!!, the coefficients of (1 - u)^{-3/2}.
double inverse_cube_series_coeff(int n);

TaylorApprox inverse_cube_taylor(double r_min, double r_max, int d);

// Lagrange remainder of the degree-d expansion of (1 - u)^{-3/2} for
// |u| <= x: c_{d+1} x^{d+1} / (1 - x)^{5/2 + d}.
double inverse_cube_remainder(int d, double x);
// The same remainder with c_{d+1} replaced by its asymptotic size
// sqrt(pi d). Valid (and looser) for d >= 2 only.
double inverse_cube_remainder_asymptotic(int d, double x);

struct DegreeChoice {
  int degree = 1;
  bool clamped = false;
};

// d = ceil(R^2 ln(k^2 / eps)); clamped to 1 when eps >= k^2.
DegreeChoice choose_gravity_degree(double R, int k, double eps);
// As above, printing a warning to stderr when clamping.
int gravity_degree(double R, int k, double eps);
// The real-valued R^2 ln(k^2 / eps).
double gravity_exponent(double R, int k, double eps);

// -1/2 (2 ln d + ln b_ceil(d)): extra log(sqrt(M)) paid by a kernel whose
// degree-d coefficient is b_d instead of d^-2.
double kernel_penalty_log(const CoefficientSchedule& schedule, double d);

// log sqrt(M) = -1/2 ln k + 3/2 ln d + d ln(24 k), with d the real-valued
// gravity_exponent, plus kernel_penalty_log when a schedule is given.
BoundReport gravity_bound_log(double R, int k, double eps,
                              const CoefficientSchedule* kernel_penalty = nullptr,
                              double delta = kDefaultDelta);

// Recomputation of the gravity bound from the auxiliary series
// k~(y) = sqrt(2) y, h~(y) = 6 y^2, f~_d(y) = sqrt(pi d) (1 + y / a^2)^d
// with r_max^2 = 2 / k and r_min = r_max / R, scaled by sqrt(8) k / r_max^3.
struct GravityCrossCheck {
  int degree = 0;
  double a_sq = 0.0;
  double r_max = 0.0;
  double log_sqrt_m_recomputed = 0.0;
  double log_sqrt_m_closed_form = 0.0;
  // recomputed minus closed form.
  double log_ratio = 0.0;
  // True when the recomputation went through the series operations rather
  // than the equivalent log-domain expression (used when values overflow).
  bool used_series_ops = false;
};

GravityCrossCheck gravity_cross_check(double R, int k, double eps);

}  // namespace gravbound

#endif  // GRAVBOUND_GRAVITY_BOUND_HPP_
