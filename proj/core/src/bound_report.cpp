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

#include "gravbound/bound_report.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "detail/summation.hpp"
#include "gravbound/errors.hpp"
#include "json.hpp"

namespace gravbound {
namespace {

constexpr std::array<std::pair<BoundRule, std::string_view>, 8> kRuleNames{{
    {BoundRule::kUnivariate, "univariate"},
    {BoundRule::kMonomial, "monomial"},
    {BoundRule::kKernelWeighted, "kernel-weighted"},
    {BoundRule::kMultivariate, "multivariate"},
    {BoundRule::kProduct, "product"},
    {BoundRule::kChain, "chain"},
    {BoundRule::kBivariate, "bivariate"},
    {BoundRule::kGravity, "gravity"},
}};

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("failure probability delta must lie in (0, 1)");
  }
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
}

}  // namespace

std::string_view to_string(BoundRule rule) {
  for (const auto& [r, name] : kRuleNames) {
    if (r == rule) return name;
  }
  return "unknown";
}

std::optional<BoundRule> parse_bound_rule(std::string_view name) {
  for (const auto& [r, n] : kRuleNames) {
    if (n == name) return r;
  }
  return std::nullopt;
}

BoundReport::BoundReport(BoundRule rule, double log_sqrt_m, double delta)
    : rule_(rule), log_sqrt_m_(log_sqrt_m), delta_(delta) {
  check_delta(delta);
  if (std::isnan(log_sqrt_m) || log_sqrt_m == std::numeric_limits<double>::infinity()) {
    throw DivergenceError("bound value is not finite");
  }
}

BoundReport BoundReport::from_value(BoundRule rule, double sqrt_m,
                                    double delta) {
  if (!(sqrt_m >= 0.0)) throw DomainError("sqrt(M) must be nonnegative");
  if (!std::isfinite(sqrt_m)) throw DivergenceError("sqrt(M) is not finite");
  BoundReport out(rule, std::log(sqrt_m), delta);
  out.linear_ = sqrt_m;
  return out;
}

BoundReport BoundReport::from_log(BoundRule rule, double log_sqrt_m,
                                  double delta) {
  return BoundReport(rule, log_sqrt_m, delta);
}

std::optional<double> BoundReport::sqrt_M() const {
  if (linear_) return linear_;
  const double v = std::exp(log_sqrt_m_);
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

double BoundReport::log_sample_estimate(double epsilon) const {
  check_epsilon(epsilon);
  const double log_m =
      linear_ ? 2.0 * std::log(*linear_) : 2.0 * log_sqrt_m_;
  const double log_conf = std::log(std::log(1.0 / delta_));
  return detail::log_add(log_m, log_conf) - 2.0 * std::log(epsilon);
}

double BoundReport::sample_estimate(double epsilon) const {
  return std::exp(log_sample_estimate(epsilon));
}

BoundReport BoundReport::with_delta(double delta) const {
  BoundReport out = *this;
  check_delta(delta);
  out.delta_ = delta;
  return out;
}

BoundReport BoundReport::with_note(std::string note) const {
  BoundReport out = *this;
  out.trace_.push_back(std::move(note));
  return out;
}

std::string to_document(const BoundReport& report, double epsilon) {
  nlohmann::ordered_json doc;
  doc["rule"] = std::string(to_string(report.rule()));
  if (auto v = report.sqrt_M()) doc["sqrt_M"] = *v;
  doc["log_sqrt_M"] = report.log_sqrt_M() == -std::numeric_limits<double>::infinity()
                          ? nlohmann::ordered_json(nullptr)
                          : nlohmann::ordered_json(report.log_sqrt_M());
  doc["delta"] = report.delta();
  doc["epsilon"] = epsilon;
  const double log_n = report.log_sample_estimate(epsilon);
  const double n = std::exp(log_n);
  if (std::isfinite(n)) doc["sample_estimate"] = n;
  doc["log_sample_estimate"] = log_n;
  doc["constants_dropped"] = report.constants_dropped();
  doc["trace"] = report.trace();
  return doc.dump(2);
}

BoundReport report_from_document(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), 0);
  }
  const auto rule_name = doc.at("rule").get<std::string>();
  const auto rule = parse_bound_rule(rule_name);
  if (!rule) throw ParseError("unknown rule '" + rule_name + "'", 0);
  const double delta = doc.at("delta").get<double>();
  BoundReport out = [&] {
    if (doc.contains("sqrt_M")) {
      return BoundReport::from_value(*rule, doc["sqrt_M"].get<double>(), delta);
    }
    if (doc.contains("log_sqrt_M") && !doc["log_sqrt_M"].is_null()) {
      return BoundReport::from_log(*rule, doc["log_sqrt_M"].get<double>(), delta);
    }
    return BoundReport::from_value(*rule, 0.0, delta);
  }();
  if (doc.contains("trace")) {
    for (const auto& note : doc["trace"]) out = out.with_note(note.get<std::string>());
  }
  return out;
}

}  // namespace gravbound
