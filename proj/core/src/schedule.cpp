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

#include "gravbound/schedule.hpp"

#include <cmath>
#include <memory>
#include <sstream>
#include <utility>

#include "gravbound/errors.hpp"

namespace gravbound {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

CoefficientSchedule::CoefficientSchedule(std::string name, LogCoeffFn log_b,
                                         int max_degree)
    : name_(std::move(name)), log_b_(std::move(log_b)), max_degree_(max_degree) {}

CoefficientSchedule CoefficientSchedule::gaussian(double r) {
  if (!(r >= 0.0)) throw DomainError("sphere radius must be nonnegative");
  std::ostringstream name;
  name << "gaussian(r=" << r << ")";
  return CoefficientSchedule(name.str(), [r](int k) {
    return -r * r - std::lgamma(static_cast<double>(k) + 1.0);
  });
}

CoefficientSchedule CoefficientSchedule::inverse_square() {
  return CoefficientSchedule("inverse-square", [](int k) {
    if (k == 0) return kInf;
    return -2.0 * std::log(static_cast<double>(k));
  });
}

CoefficientSchedule CoefficientSchedule::plain_relu() {
  return CoefficientSchedule("plain-relu", [](int k) {
    if (k == 0) return 0.0;
    if (k == 1 || k % 2 == 0) return -2.0 * std::log(static_cast<double>(k));
    return -kInf;
  });
}

CoefficientSchedule CoefficientSchedule::power_law(double s) {
  std::ostringstream name;
  name << "slow-decay(s=" << s << ")";
  return CoefficientSchedule(name.str(), [s](int k) {
    if (k == 0) return -kInf;
    return -s * std::log(static_cast<double>(k));
  });
}

CoefficientSchedule CoefficientSchedule::from_prefix(std::string name,
                                                     std::vector<double> b) {
  auto table = std::make_shared<const std::vector<double>>(std::move(b));
  const int max_degree = static_cast<int>(table->size()) - 1;
  return CoefficientSchedule(
      std::move(name),
      [table](int k) {
        const double v = (*table)[static_cast<std::size_t>(k)];
        return v > 0.0 ? std::log(v) : -kInf;
      },
      max_degree);
}

double CoefficientSchedule::log_b(int k) const {
  if (k < 0 || k > max_degree_) {
    std::ostringstream msg;
    msg << "schedule '" << name_ << "' has no coefficient for degree " << k
        << " (max " << max_degree_ << ")";
    throw DomainError(msg.str());
  }
  return log_b_(k);
}

double CoefficientSchedule::b(int k) const { return std::exp(log_b(k)); }

}  // namespace gravbound
