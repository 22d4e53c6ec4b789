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

#include "gravbound/aux_series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "detail/summation.hpp"
#include "gravbound/errors.hpp"

namespace gravbound {
namespace {

constexpr int kGrowingTermsLimit = 50;

void check_argument(const AuxSeries& s, double y) {
  if (!(y >= 0.0)) {
    std::ostringstream msg;
    msg << "auxiliary series evaluated at y = " << y << " < 0";
    throw DomainError(msg.str());
  }
  if (!(y < s.declared_radius())) {
    std::ostringstream msg;
    msg << "auxiliary series evaluated at y = " << y
        << " which is not inside the radius of convergence "
        << s.declared_radius();
    throw DivergenceError(msg.str());
  }
}

// Sums term(0..n-1). For truncated series the geometric tail estimate from
// the last two nonzero terms is added to the uncertainty.
template <typename Term>
SeriesValue accumulate(int n, bool truncated, Term term) {
  detail::CompensatedSum acc;
  double prev = 0.0;
  double last = 0.0;
  int growing = 0;
  for (int k = 0; k < n; ++k) {
    const double t = term(k);
    if (t == 0.0) continue;
    acc.add(t);
    growing = (last > 0.0 && t > last) ? growing + 1 : 0;
    prev = last;
    last = t;
  }
  SeriesValue out;
  out.value = acc.value();
  if (!std::isfinite(out.value)) {
    throw DivergenceError("auxiliary series sum is not finite");
  }
  out.uncertainty = 2.0 * std::numeric_limits<double>::epsilon() * acc.abs_total();
  if (truncated) {
    if (growing >= kGrowingTermsLimit) {
      std::ostringstream msg;
      msg << "series terms grew for " << growing
          << " consecutive indices at the end of the held prefix";
      throw DivergenceError(msg.str());
    }
    if (prev > 0.0) {
      const double ratio = last / prev;
      out.uncertainty += ratio < 1.0 ? last * ratio / (1.0 - ratio)
                                     : std::numeric_limits<double>::infinity();
    }
  }
  return out;
}

}  // namespace

AuxSeries::AuxSeries(std::vector<double> coeffs, double radius, Extent extent)
    : coeffs_(std::move(coeffs)), radius_(radius), extent_(extent) {
  if (!(radius_ > 0.0)) {
    throw DomainError("auxiliary series radius must be positive");
  }
  for (double& c : coeffs_) {
    if (!std::isfinite(c)) {
      throw DomainError("auxiliary series coefficients must be finite");
    }
    c = std::abs(c);
  }
}

AuxSeries AuxSeries::from_generator(const std::function<double(int)>& coeff,
                                    int max_degree, double radius) {
  std::vector<double> c(static_cast<std::size_t>(std::max(max_degree + 1, 0)));
  for (int k = 0; k <= max_degree; ++k) c[k] = coeff(k);
  return AuxSeries(std::move(c), radius, Extent::kTruncated);
}

double AuxSeries::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[k];
}

SeriesValue AuxSeries::eval(double y) const {
  check_argument(*this, y);
  const int n = static_cast<int>(coeffs_.size());
  // Powers by repeated multiplication; y^0 = 1 including y = 0.
  double power = 1.0;
  int power_k = 0;
  return accumulate(n, is_truncated(), [&](int k) {
    while (power_k < k) {
      power *= y;
      ++power_k;
    }
    return coeffs_[k] * power;
  });
}

SeriesValue AuxSeries::deriv_eval(double y) const {
  check_argument(*this, y);
  const int n = static_cast<int>(coeffs_.size());
  double power = 1.0;  // y^(k-1)
  int power_k = 1;
  return accumulate(n, is_truncated(), [&](int k) {
    if (k == 0) return 0.0;
    while (power_k < k) {
      power *= y;
      ++power_k;
    }
    return k * coeffs_[k] * power;
  });
}

AuxSeries aux_from_coeffs(std::span<const double> raw_coeffs, double radius) {
  const auto extent = std::isfinite(radius) ? AuxSeries::Extent::kTruncated
                                            : AuxSeries::Extent::kComplete;
  return AuxSeries(std::vector<double>(raw_coeffs.begin(), raw_coeffs.end()),
                   radius, extent);
}

SeriesValue aux_eval(const AuxSeries& s, double y) { return s.eval(y); }

SeriesValue aux_deriv_eval(const AuxSeries& s, double y) {
  return s.deriv_eval(y);
}

AuxSeries aux_product(const AuxSeries& g, const AuxSeries& h, int max_degree) {
  const int dg = g.tail_truncated_at();
  const int dh = h.tail_truncated_at();
  const double radius = std::min(g.declared_radius(), h.declared_radius());
  if (dg < 0 || dh < 0) return AuxSeries({}, radius, AuxSeries::Extent::kComplete);
  const int full = dg + dh;
  const int deg = std::min(full, max_degree);
  std::vector<double> c(static_cast<std::size_t>(deg + 1), 0.0);
  for (int i = 0; i <= std::min(dg, deg); ++i) {
    for (int j = 0; j <= std::min(dh, deg - i); ++j) {
      c[i + j] += g.coeff(i) * h.coeff(j);
    }
  }
  const bool truncated = g.is_truncated() || h.is_truncated() || deg < full;
  return AuxSeries(std::move(c), radius,
                   truncated ? AuxSeries::Extent::kTruncated
                             : AuxSeries::Extent::kComplete);
}

AuxSeries aux_compose(const AuxSeries& outer, const AuxSeries& inner,
                      int max_degree) {
  // Radius: largest y with inner(y) inside the radius of the outer series.
  double radius = inner.declared_radius();
  if (std::isfinite(outer.declared_radius())) {
    const double limit = outer.declared_radius();
    if (!(inner.coeff(0) < limit)) {
      throw DivergenceError("inner series at 0 lies outside the outer radius");
    }
    double lo = 0.0;
    double hi = std::isfinite(radius) ? radius : 1.0;
    if (!std::isfinite(radius)) {
      while (inner.eval(hi).value < limit && hi < 1e300) hi *= 2.0;
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (inner.eval(mid).value < limit) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    radius = std::min(radius, hi);
  }

  const int n_outer = outer.tail_truncated_at();
  if (n_outer < 0) return AuxSeries({}, radius, AuxSeries::Extent::kComplete);
  // Horner on coefficient vectors, truncated at max_degree.
  std::vector<double> acc{outer.coeff(n_outer)};
  bool cut = false;
  for (int k = n_outer - 1; k >= 0; --k) {
    const int da = static_cast<int>(acc.size()) - 1;
    const int di = inner.tail_truncated_at();
    const int full = da + std::max(di, 0);
    const int deg = std::min(full, max_degree);
    cut = cut || deg < full;
    std::vector<double> next(static_cast<std::size_t>(deg + 1), 0.0);
    for (int i = 0; i <= std::min(da, deg); ++i) {
      if (acc[i] == 0.0) continue;
      for (int j = 0; j <= std::min(di, deg - i); ++j) {
        next[i + j] += acc[i] * inner.coeff(j);
      }
    }
    next[0] += outer.coeff(k);
    acc = std::move(next);
  }
  const bool truncated = cut || outer.is_truncated() || inner.is_truncated();
  return AuxSeries(std::move(acc), radius,
                   truncated ? AuxSeries::Extent::kTruncated
                             : AuxSeries::Extent::kComplete);
}

AuxSeries aux_scale_argument(const AuxSeries& g, double beta) {
  if (!(beta >= 0.0)) throw DomainError("argument scale must be nonnegative");
  std::vector<double> c(g.coeffs().begin(), g.coeffs().end());
  double power = 1.0;
  for (double& ck : c) {
    ck *= power;
    power *= beta;
  }
  const double radius =
      beta == 0.0 ? kInfiniteRadius : g.declared_radius() / beta;
  return AuxSeries(std::move(c), radius, g.extent());
}

}  // namespace gravbound
