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

#ifndef GRAVBOUND_BOUND_REPORT_HPP_
#define GRAVBOUND_BOUND_REPORT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gravbound {

enum class BoundRule {
  kUnivariate,
  kMonomial,
  kKernelWeighted,
  kMultivariate,
  kProduct,
  kChain,
  kBivariate,
  kGravity,
};

std::string_view to_string(BoundRule rule);
std::optional<BoundRule> parse_bound_rule(std::string_view name);

inline constexpr double kDefaultDelta = 0.05;

// A learnability bound sqrt(M) with its provenance.
//
// The value is held as log(sqrt(M)) so that bounds far beyond the double
// range (the gravity bound routinely is) stay representable; sqrt_M() is
// available whenever exp() of it is finite. All O(1) constants of the
// underlying sample-complexity statements are set to 1, which
// constants_dropped() records.
class BoundReport {
 public:
  static BoundReport from_value(BoundRule rule, double sqrt_m,
                                double delta = kDefaultDelta);
  static BoundReport from_log(BoundRule rule, double log_sqrt_m,
                              double delta = kDefaultDelta);

  BoundRule rule() const { return rule_; }
  double delta() const { return delta_; }
  double log_sqrt_M() const { return log_sqrt_m_; }
  std::optional<double> sqrt_M() const;
  bool in_log_domain() const { return !sqrt_M().has_value(); }
  bool constants_dropped() const { return true; }
  const std::vector<std::string>& trace() const { return trace_; }

  // (M + log(1/delta)) / eps^2 samples; +inf when not representable.
  double sample_estimate(double epsilon) const;
  double log_sample_estimate(double epsilon) const;

  BoundReport with_delta(double delta) const;
  BoundReport with_note(std::string note) const;

 private:
  BoundReport(BoundRule rule, double log_sqrt_m, double delta);

  BoundRule rule_;
  double log_sqrt_m_;
  // Exact linear value when the report was built from one.
  std::optional<double> linear_;
  double delta_;
  std::vector<std::string> trace_;
};

// Structured text (JSON) with keys rule, sqrt_M (when representable),
// log_sqrt_M, delta, epsilon, sample_estimate (when representable),
// log_sample_estimate, constants_dropped and trace.
std::string to_document(const BoundReport& report, double epsilon);

// Inverse of to_document for the report fields (epsilon is dropped).
BoundReport report_from_document(std::string_view text);

}  // namespace gravbound

#endif  // GRAVBOUND_BOUND_REPORT_HPP_
