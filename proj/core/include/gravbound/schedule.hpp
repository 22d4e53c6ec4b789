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

#ifndef GRAVBOUND_SCHEDULE_HPP_
#define GRAVBOUND_SCHEDULE_HPP_

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace gravbound {

// Coefficients b_k of a dot-product kernel sum_k b_k t^k, held as log b_k.
// log b_k = -inf means b_k = 0 (the kernel cannot represent t^k);
// log b_k = +inf means the term carries no penalty (weight b_k^{-1/2} = 0).
class CoefficientSchedule {
 public:
  using LogCoeffFn = std::function<double(int)>;

  CoefficientSchedule(std::string name, LogCoeffFn log_b,
                      int max_degree = std::numeric_limits<int>::max());

  // Gaussian kernel restricted to the sphere of radius r:
  // b_k = exp(-r^2) / k!.
  static CoefficientSchedule gaussian(double r);

  // b_k = k^-2 with the k = 0 term unweighted, so that the kernel-weighted
  // bound reduces to sum_k k |a_k| beta^k.
  static CoefficientSchedule inverse_square();

  // Plain ReLU kernel on the sphere: b_0 = 1, b_k = k^-2 for k = 1 or k even,
  // b_k = 0 for odd k > 1.
  static CoefficientSchedule plain_relu();

  // Slow-decay kernel sum_{k>=1} k^-s t^k (b_0 = 0).
  static CoefficientSchedule power_law(double s);

  // Tabulated b_0 .. b_{n-1}; degrees past the table throw DomainError.
  static CoefficientSchedule from_prefix(std::string name,
                                         std::vector<double> b);

  double log_b(int k) const;
  double b(int k) const;
  const std::string& name() const { return name_; }
  int max_degree() const { return max_degree_; }

 private:
  std::string name_;
  LogCoeffFn log_b_;
  int max_degree_;
};

}  // namespace gravbound

#endif  // GRAVBOUND_SCHEDULE_HPP_
