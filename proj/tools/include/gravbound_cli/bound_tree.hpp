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

// Textual descriptions of targets for the bound calculus.
//
// A coefficient list is "a0,a1,a2" or "a0,a1,a2,..." where a trailing
// ellipsis repeats the last value up to kEllipsisTerms terms and implies
// radius 1.
//
// A rule tree is a JSON object:
//   {"rule": "chain", "g": S, "h": S, "delta": 0.05}
// with rule one of univariate (g, beta), monomial (betas), kernel-weighted
// (g, beta, kernel), multivariate (terms: [{coefficient, betas}] or g),
// product (g, h), product-family (factors, betas), chain (g, h),
// bivariate (f, g, h). A series S is one of
//   {"coeffs": [..] or "1,1,...", "radius": r}
//   {"compose": [S_outer, S_inner], "max_degree": N}
//   {"product": [S, S], "max_degree": N}
//   {"scale": S, "beta": b}
// and a bivariate f is {"terms": [[i, j, a_ij], ...], "total_degree": D,
// "radius": r}. Kernels: inverse-square, plain-relu, modified-relu,
// gaussian (with "r"), slow-decay (with "s").

#ifndef GRAVBOUND_CLI_BOUND_TREE_HPP_
#define GRAVBOUND_CLI_BOUND_TREE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "gravbound/aux_series.hpp"
#include "gravbound/bound_report.hpp"
#include "gravbound/schedule.hpp"

namespace gravbound::cli {

inline constexpr int kEllipsisTerms = 2000;

struct CoeffList {
  std::vector<double> coeffs;
  double implied_radius = kInfiniteRadius;
};

CoeffList parse_coeff_list(std::string_view text);
std::vector<double> parse_number_list(std::string_view text);

// Schedules by name; `param` is r for gaussian and s for slow-decay.
CoefficientSchedule schedule_by_name(const std::string& name, double param);

BoundReport evaluate_bound_tree(std::string_view json_text);

}  // namespace gravbound::cli

#endif  // GRAVBOUND_CLI_BOUND_TREE_HPP_
