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

#include "gravbound_cli/bound_tree.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "gravbound/bivariate_series.hpp"
#include "gravbound/calculus.hpp"
#include "gravbound/errors.hpp"
#include "gravbound/kernels.hpp"
#include "json.hpp"

namespace gravbound::cli {
namespace {

using nlohmann::json;

constexpr int kDefaultMaxDegree = 2000;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view f) {
  f = trim(f);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
    throw DomainError("cannot parse '" + std::string(f) + "' as a number");
  }
  return v;
}

const json& field(const json& node, const char* key) {
  if (!node.contains(key)) throw DomainError(std::string("rule tree is missing '") + key + "'");
  return node.at(key);
}

AuxSeries series_from(const json& node) {
  if (node.contains("coeffs")) {
    const json& c = node.at("coeffs");
    CoeffList list;
    if (c.is_string()) {
      list = parse_coeff_list(c.get<std::string>());
    } else {
      list.coeffs = c.get<std::vector<double>>();
    }
    const double radius = node.value("radius", list.implied_radius);
    return aux_from_coeffs(list.coeffs, radius);
  }
  const int max_degree = node.value("max_degree", kDefaultMaxDegree);
  if (node.contains("compose")) {
    const json& pair = node.at("compose");
    if (!pair.is_array() || pair.size() != 2) throw DomainError("compose takes [outer, inner]");
    return aux_compose(series_from(pair[0]), series_from(pair[1]), max_degree);
  }
  if (node.contains("product")) {
    const json& pair = node.at("product");
    if (!pair.is_array() || pair.size() != 2) throw DomainError("product takes two series");
    return aux_product(series_from(pair[0]), series_from(pair[1]), max_degree);
  }
  if (node.contains("scale")) {
    return aux_scale_argument(series_from(node.at("scale")), field(node, "beta").get<double>());
  }
  throw DomainError("series node needs one of coeffs, compose, product, scale");
}

BivariateAuxSeries bivariate_from(const json& node) {
  BivariateAuxSeries f(node.value("total_degree", BivariateAuxSeries::kDefaultTotalDegree),
                       node.value("radius", kInfiniteRadius));
  for (const auto& t : field(node, "terms")) {
    if (!t.is_array() || t.size() != 3) throw DomainError("bivariate terms are [i, j, a_ij]");
    f.set(t[0].get<int>(), t[1].get<int>(), t[2].get<double>());
  }
  return f;
}

BoundReport evaluate(const json& root) {
  const std::string rule = field(root, "rule").get<std::string>();
  const double delta = root.value("delta", kDefaultDelta);
  if (rule == "univariate") {
    return univariate_bound(series_from(field(root, "g")), field(root, "beta").get<double>(),
                            delta);
  }
  if (rule == "monomial") {
    return monomial_bound(field(root, "betas").get<std::vector<double>>(), delta);
  }
  if (rule == "kernel-weighted") {
    const AuxSeries g = series_from(field(root, "g"));
    const double param = root.value("r", root.value("s", 1.0));
    const auto schedule = schedule_by_name(field(root, "kernel").get<std::string>(), param);
    std::vector<double> coeffs(g.coeffs().begin(), g.coeffs().end());
    return kernel_weighted_bound(coeffs, field(root, "beta").get<double>(), schedule, delta);
  }
  if (rule == "multivariate") {
    if (root.contains("g")) return multivariate_bound(series_from(root.at("g")), delta);
    std::vector<MonomialTerm> terms;
    for (const auto& t : field(root, "terms")) {
      terms.push_back({field(t, "coefficient").get<double>(),
                       t.value("betas", std::vector<double>{})});
    }
    return multivariate_bound(terms, delta);
  }
  if (rule == "product") {
    return product_bound(series_from(field(root, "g")), series_from(field(root, "h")), delta);
  }
  if (rule == "product-family") {
    std::vector<AuxSeries> factors;
    for (const auto& s : field(root, "factors")) factors.push_back(series_from(s));
    return product_family_bound(factors, field(root, "betas").get<std::vector<double>>(), delta);
  }
  if (rule == "chain") {
    return chain_bound(series_from(field(root, "g")), series_from(field(root, "h")), delta);
  }
  if (rule == "bivariate") {
    return bivariate_chain_bound(bivariate_from(field(root, "f")), series_from(field(root, "g")),
                                 series_from(field(root, "h")), delta);
  }
  throw DomainError("unknown rule '" + rule + "'");
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_number(text.substr(start, comma == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

CoeffList parse_coeff_list(std::string_view text) {
  text = trim(text);
  CoeffList out;
  bool ellipsis = false;
  for (std::string_view tail : {",...", ",…"}) {
    if (text.size() >= tail.size() && text.substr(text.size() - tail.size()) == tail) {
      text.remove_suffix(tail.size());
      ellipsis = true;
      break;
    }
  }
  out.coeffs = parse_number_list(text);
  if (out.coeffs.empty()) throw DomainError("coefficient list is empty");
  if (ellipsis) {
    const double last = out.coeffs.back();
    out.coeffs.resize(std::max<std::size_t>(out.coeffs.size(), kEllipsisTerms), last);
    if (last != 0.0) out.implied_radius = 1.0;
  }
  return out;
}

CoefficientSchedule schedule_by_name(const std::string& name, double param) {
  if (name == "inverse-square") return CoefficientSchedule::inverse_square();
  if (name == "plain-relu") return CoefficientSchedule::plain_relu();
  if (name == "modified-relu") return DotProductKernel::modified_relu(2000).schedule();
  if (name == "gaussian") return CoefficientSchedule::gaussian(param);
  if (name == "slow-decay") return CoefficientSchedule::power_law(param);
  throw DomainError("unknown kernel schedule '" + name + "'");
}

BoundReport evaluate_bound_tree(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 0);
  }
  try {
    return evaluate(root);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed rule tree: ") + e.what());
  }
}

}  // namespace gravbound::cli
