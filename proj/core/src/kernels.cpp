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

#include "gravbound/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "detail/summation.hpp"
#include "gravbound/errors.hpp"

namespace gravbound {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;
constexpr int kMaxCoeffDegree = 2000;
// Cap on the inner index of the arcsin double sum.
constexpr int kMaxInnerTerms = 1'000'000;
constexpr double kClampSlack = 1e-9;

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("vector dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Riemann zeta by Euler-Maclaurin with N = 32 and six Bernoulli terms.
double zeta(double s) {
  constexpr int kN = 32;
  constexpr std::array<double, 6> kBernoulli{1.0 / 6.0,  -1.0 / 30.0,
                                             1.0 / 42.0, -1.0 / 30.0,
                                             5.0 / 66.0, -691.0 / 2730.0};
  detail::CompensatedSum acc;
  for (int k = kN - 1; k >= 1; --k) acc.add(std::pow(k, -s));
  const double n = kN;
  acc.add(std::pow(n, 1.0 - s) / (s - 1.0));
  acc.add(0.5 * std::pow(n, -s));
  double rising = s;  // s (s+1) ... (s + 2j - 2)
  double factorial = 2.0;  // (2j)!
  for (int j = 1; j <= 6; ++j) {
    acc.add(kBernoulli[j - 1] / factorial * rising * std::pow(n, -s - 2 * j + 1));
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return acc.value();
}

// log of s_n = (2n-1)!! / ((2n)!! (2n+1)), grown on demand.
class ArcsinLogCoeffs {
 public:
  double operator()(int n) {
    while (static_cast<int>(log_p_.size()) <= n) {
      const double i = static_cast<double>(log_p_.size());
      log_p_.push_back(log_p_.back() + std::log1p(-1.0 / (2.0 * i)));
    }
    return log_p_[static_cast<std::size_t>(n)] - std::log(2.0 * n + 1.0);
  }

 private:
  std::vector<double> log_p_{0.0};
};

std::shared_ptr<const CoefficientPrefix> make_cache(CoefficientPrefix p) {
  return std::make_shared<const CoefficientPrefix>(std::move(p));
}

void check_cache_degree(int K) {
  if (K < 0 || K > kMaxCoeffDegree) {
    throw DomainError("coefficient prefix degree must lie in [0, 2000]");
  }
}

CoefficientPrefix gaussian_coeffs(double r, int K) {
  CoefficientPrefix p;
  p.b.resize(static_cast<std::size_t>(K) + 1);
  p.residual.resize(p.b.size());
  double v = std::exp(-r * r);
  for (int k = 0; k <= K; ++k) {
    if (k > 0) v /= k;
    p.b[static_cast<std::size_t>(k)] = v;
    p.residual[static_cast<std::size_t>(k)] = (k + 2) * kEps * v;
  }
  return p;
}

CoefficientPrefix slow_decay_coeffs(double s, int K) {
  CoefficientPrefix p;
  p.b.assign(static_cast<std::size_t>(K) + 1, 0.0);
  p.residual.assign(p.b.size(), 0.0);
  for (int k = 1; k <= K; ++k) {
    const double v = std::pow(static_cast<double>(k), -s);
    p.b[static_cast<std::size_t>(k)] = v;
    p.residual[static_cast<std::size_t>(k)] = 2.0 * kEps * v;
  }
  return p;
}

void check_mc_args(std::span<const double> x, std::span<const double> x_prime,
                   int m) {
  if (m < 1) throw DomainError("Monte-Carlo width m must be >= 1");
  if (x.size() != x_prime.size()) throw DomainError("vector dimensions differ");
}

// Welford mean and standard error of the m draws value(z_i).
template <typename Value>
MonteCarloEstimate sample_mean(std::size_t dim, int m, double sigma,
                               std::uint64_t seed, Value value) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  std::vector<double> z(dim);
  double mean = 0.0;
  double m2 = 0.0;
  for (int i = 0; i < m; ++i) {
    for (auto& zi : z) zi = normal(gen);
    const double v = value(z);
    const double delta = v - mean;
    mean += delta / (i + 1);
    m2 += delta * (v - mean);
  }
  MonteCarloEstimate out;
  out.value = mean;
  out.std_error = m > 1 ? std::sqrt(m2 / (m - 1) / m) : 0.0;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Closed forms.

double modified_relu_eval(double t) {
  if (!(std::abs(t) <= 1.0 + kClampSlack)) {
    std::ostringstream msg;
    msg << "modified ReLU kernel needs |t| <= 1, got " << t;
    throw DomainError(msg.str());
  }
  // acos has infinite slope at +-1, so a dot product a few ulps short of
  // +-1 (identical or antipodal unit inputs) would cost ~1e-8. Snap it.
  constexpr double kSnap = 8.0 * std::numeric_limits<double>::epsilon();
  if (t > 1.0 - kSnap) t = 1.0;
  if (t < -1.0 + kSnap) t = -1.0;
  const double arg = (t + 1.0) / 2.0;
  return (t + 1.0) / (4.0 * kPi) * (kPi - std::acos(arg));
}

std::vector<double> input_lift(std::span<const double> x, bool normalize_first) {
  double norm = std::sqrt(dot(x, x));
  if (normalize_first) {
    if (norm == 0.0) throw DomainError("cannot normalize the zero vector");
  } else if (std::abs(norm - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "input_lift expects a unit vector, got norm " << norm;
    throw DomainError(msg.str());
  } else {
    norm = 1.0;
  }
  std::vector<double> out;
  out.reserve(x.size() + 1);
  const double scale = 1.0 / (std::numbers::sqrt2 * norm);
  for (double v : x) out.push_back(v * scale);
  out.push_back(1.0 / std::numbers::sqrt2);
  return out;
}

double gaussian_eval(std::span<const double> x, std::span<const double> x_prime) {
  if (x.size() != x_prime.size()) throw DomainError("vector dimensions differ");
  double dist_sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - x_prime[i];
    dist_sq += d * d;
  }
  if (!std::isfinite(dist_sq)) throw DomainError("inputs must be finite");
  return std::exp(-dist_sq / 2.0);
}

double slow_decay_eval(double t, double s) {
  if (!(s > 0.0)) throw DomainError("decay exponent s must be positive");
  const double at = std::abs(t);
  if (!(at <= 1.0)) throw DomainError("slow-decay kernel needs |t| <= 1");
  if (at == 1.0) {
    if (s <= 1.0) {
      throw DivergenceError("sum k^-s diverges at |t| = 1 for s <= 1");
    }
    const double z = zeta(s);
    return t > 0.0 ? z : -(1.0 - std::pow(2.0, 1.0 - s)) * z;
  }
  if (t == 0.0) return 0.0;
  detail::CompensatedSum acc;
  double power = 1.0;
  constexpr long kMaxTerms = 100'000'000;
  for (long k = 1; k <= kMaxTerms; ++k) {
    power *= t;
    acc.add(std::pow(static_cast<double>(k), -s) * power);
    // Remaining terms are bounded by a geometric series in |t|.
    const double tail = std::pow(static_cast<double>(k + 1), -s) *
                        std::abs(power) * at / (1.0 - at);
    if (tail < 1e-13 * std::abs(acc.value()) || tail < 1e-300) {
      return acc.value();
    }
  }
  throw DivergenceError("slow-decay series did not converge; |t| too close to 1");
}

// ---------------------------------------------------------------------------
// Coefficients.

CoefficientPrefix arccos_factor_coeffs(int K_max) {
  check_cache_degree(K_max);
  ArcsinLogCoeffs log_s;
  const double ln2 = std::numbers::ln2;
  CoefficientPrefix out;
  out.b.resize(static_cast<std::size_t>(K_max) + 1);
  out.residual.resize(out.b.size());
  std::vector<double> log_terms;
  for (int k = 0; k <= K_max; ++k) {
    // a_k = sum_{2n+1 >= k} s_n C(2n+1, k) 2^-(2n+1).
    log_terms.clear();
    int n = k / 2;
    double log_binom = (k % 2 == 1) ? 0.0 : std::log(k + 1.0);
    double log_max = -std::numeric_limits<double>::infinity();
    double tail = 0.0;
    for (int count = 0; count < kMaxInnerTerms; ++count, ++n) {
      const double lt = log_s(n) + log_binom - (2.0 * n + 1.0) * ln2;
      log_terms.push_back(lt);
      log_max = std::max(log_max, lt);
      const double big = 2.0 * n + 3.0;
      // Upper bound on the ratio of consecutive terms from here on.
      const double ratio =
          big * (big - 1.0) / ((big - k) * (big - 1.0 - k)) / 4.0;
      if (ratio < 1.0 && lt < log_max + std::log(1e-17)) {
        tail = std::exp(lt) * ratio / (1.0 - ratio);
        break;
      }
      log_binom += std::log(big / (big - k)) + std::log((big - 1.0) / (big - 1.0 - k));
    }
    detail::CompensatedSum acc;
    for (double lt : log_terms) acc.add(std::exp(lt - log_max));
    double a = std::exp(log_max) * acc.value();
    if (k == 0) a += kPi / 2.0;
    out.b[static_cast<std::size_t>(k)] = a;
    // Each log term carries the rounding of the running log_binom sum plus
    // that of its own three parts; exp() turns absolute into relative error.
    const double steps = static_cast<double>(log_terms.size());
    const double log_err =
        kEps * (steps * log_binom + (2.0 * n + 1.0) * ln2 + std::abs(log_s(n)) + 4.0);
    out.residual[static_cast<std::size_t>(k)] =
        tail + a * (log_err + steps * kEps);
  }
  return out;
}

CoefficientPrefix modified_relu_coeffs(int K_max) {
  const CoefficientPrefix a = arccos_factor_coeffs(K_max);
  CoefficientPrefix out;
  out.b.resize(a.b.size());
  out.residual.resize(a.b.size());
  for (std::size_t k = 0; k < a.b.size(); ++k) {
    const double prev = k > 0 ? a.b[k - 1] : 0.0;
    const double prev_res = k > 0 ? a.residual[k - 1] : 0.0;
    out.b[k] = (a.b[k] + prev) / (4.0 * kPi);
    out.residual[k] = (a.residual[k] + prev_res) / (4.0 * kPi) + 2.0 * kEps * out.b[k];
  }
  return out;
}

CoefficientPrefix series_coeffs(const DotProductKernel& kernel, int K_max) {
  check_cache_degree(K_max);
  if (kernel.kind() == KernelKind::kMonteCarlo) {
    throw DomainError("Monte-Carlo kernels have no extractable coefficients");
  }
  const CoefficientPrefix& cache = kernel.cached_coeffs();
  if (static_cast<std::size_t>(K_max) < cache.b.size()) {
    CoefficientPrefix out;
    out.b.assign(cache.b.begin(), cache.b.begin() + K_max + 1);
    out.residual.assign(cache.residual.begin(), cache.residual.begin() + K_max + 1);
    return out;
  }
  switch (kernel.kind()) {
    case KernelKind::kModifiedRelu:
      return modified_relu_coeffs(K_max);
    case KernelKind::kGaussianOnSphere:
      return gaussian_coeffs(kernel.sphere_radius(), K_max);
    case KernelKind::kSlowDecay:
      return slow_decay_coeffs(kernel.decay_exponent(), K_max);
    case KernelKind::kMonteCarlo:
      break;
  }
  throw DomainError("unsupported kernel kind");
}

// ---------------------------------------------------------------------------
// Monte-Carlo.

MonteCarloEstimate mc_kernel_estimate(std::span<const double> x,
                                      std::span<const double> x_prime,
                                      Activation activation, int m,
                                      double sigma_sq, std::uint64_t seed) {
  check_mc_args(x, x_prime, m);
  if (!(sigma_sq > 0.0)) throw DomainError("sigma_sq must be positive");
  return sample_mean(x.size(), m, std::sqrt(sigma_sq), seed,
                     [&](const std::vector<double>& z) {
                       const double u = dot(z, x);
                       const double v = dot(z, x_prime);
                       if (activation == Activation::kRelu) {
                         return std::max(u, 0.0) * std::max(v, 0.0);
                       }
                       return std::exp(u + v);
                     });
}

MonteCarloEstimate mc_relu_tangent_estimate(std::span<const double> x,
                                            std::span<const double> x_prime,
                                            int m, std::uint64_t seed) {
  check_mc_args(x, x_prime, m);
  const double t = dot(x, x_prime);
  return sample_mean(x.size(), m, 1.0, seed, [&](const std::vector<double>& z) {
    return (dot(z, x) > 0.0 && dot(z, x_prime) > 0.0) ? t : 0.0;
  });
}

void write_coefficient_table(std::ostream& out, std::span<const double> b) {
  out << "# k b_k\n";
  char buf[64];
  for (std::size_t k = 0; k < b.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu %.17g\n", k, b[k]);
    out << buf;
  }
}

// ---------------------------------------------------------------------------
// DotProductKernel.

DotProductKernel::DotProductKernel(KernelKind kind, double param,
                                   MonteCarloSpec mc,
                                   std::shared_ptr<const CoefficientPrefix> cache)
    : kind_(kind), param_(param), mc_(mc), cache_(std::move(cache)) {}

DotProductKernel DotProductKernel::modified_relu(int cache_degree) {
  check_cache_degree(cache_degree);
  return DotProductKernel(KernelKind::kModifiedRelu, 0.0, {},
                          make_cache(modified_relu_coeffs(cache_degree)));
}

DotProductKernel DotProductKernel::gaussian_on_sphere(double r, int cache_degree) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError("sphere radius must be finite and nonnegative");
  }
  check_cache_degree(cache_degree);
  return DotProductKernel(KernelKind::kGaussianOnSphere, r, {},
                          make_cache(gaussian_coeffs(r, cache_degree)));
}

DotProductKernel DotProductKernel::slow_decay(double s, int cache_degree) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DomainError("decay exponent s must be positive");
  }
  check_cache_degree(cache_degree);
  return DotProductKernel(KernelKind::kSlowDecay, s, {},
                          make_cache(slow_decay_coeffs(s, cache_degree)));
}

DotProductKernel DotProductKernel::monte_carlo(const MonteCarloSpec& spec) {
  if (spec.width < 1) throw DomainError("Monte-Carlo width m must be >= 1");
  if (!(spec.sigma_sq > 0.0)) throw DomainError("sigma_sq must be positive");
  return DotProductKernel(KernelKind::kMonteCarlo, 0.0, spec, nullptr);
}

std::string DotProductKernel::name() const {
  std::ostringstream s;
  switch (kind_) {
    case KernelKind::kModifiedRelu:
      s << "modified-relu";
      break;
    case KernelKind::kGaussianOnSphere:
      s << "gaussian(r=" << param_ << ")";
      break;
    case KernelKind::kSlowDecay:
      s << "slow-decay(s=" << param_ << ")";
      break;
    case KernelKind::kMonteCarlo:
      s << "monte-carlo("
        << (mc_.activation == Activation::kRelu ? "relu" : "exp")
        << ", m=" << mc_.width << ", seed=" << mc_.seed
        << ", sigma_sq=" << mc_.sigma_sq << ")";
      break;
  }
  return s.str();
}

double DotProductKernel::eval_dot(double t) const {
  switch (kind_) {
    case KernelKind::kModifiedRelu:
      return modified_relu_eval(t);
    case KernelKind::kGaussianOnSphere:
      return std::exp(-param_ * param_) * std::exp(t);
    case KernelKind::kSlowDecay:
      return slow_decay_eval(t, param_);
    case KernelKind::kMonteCarlo:
      break;
  }
  throw DomainError("Monte-Carlo kernels have no closed form in x . x'");
}

double DotProductKernel::eval(std::span<const double> x,
                              std::span<const double> x_prime) const {
  switch (kind_) {
    case KernelKind::kGaussianOnSphere:
      return gaussian_eval(x, x_prime);
    case KernelKind::kMonteCarlo:
      return mc_kernel_estimate(x, x_prime, mc_.activation, mc_.width,
                                mc_.sigma_sq, mc_.seed)
          .value;
    default:
      return eval_dot(dot(x, x_prime));
  }
}

const CoefficientPrefix& DotProductKernel::cached_coeffs() const {
  if (!cache_) throw DomainError("Monte-Carlo kernels have no extractable coefficients");
  return *cache_;
}

double DotProductKernel::series_eval(double t, int K) const {
  const auto& b = cached_coeffs().b;
  if (K < 0 || static_cast<std::size_t>(K) >= b.size()) {
    throw DomainError("series degree exceeds the cached prefix");
  }
  detail::CompensatedSum acc;
  double power = 1.0;
  for (int k = 0; k <= K; ++k) {
    acc.add(b[static_cast<std::size_t>(k)] * power);
    power *= t;
  }
  return acc.value();
}

double DotProductKernel::analytic_tail(double t, int K) const {
  const auto& b = cached_coeffs().b;
  const double at = std::abs(t);
  const double bK = b[static_cast<std::size_t>(K)];
  switch (kind_) {
    case KernelKind::kModifiedRelu: {
      if (at == 0.0) return 0.0;
      // b_k k^{3/2} is nonincreasing, so b_k <= b_K (K/k)^{3/2} and b_k <= b_K.
      if (K == 0) return modified_relu_eval(at) - bK;
      double tail = 2.0 * K * bK;
      if (at < 1.0) tail = std::min(tail, bK * std::pow(at, K + 1) / (1.0 - at));
      return tail;
    }
    case KernelKind::kGaussianOnSphere: {
      if (at == 0.0) return 0.0;
      const double next = bK * std::pow(at, K + 1) / (K + 1.0);
      const double ratio = at / (K + 2.0);
      if (ratio < 1.0) return next / (1.0 - ratio);
      return std::exp(-param_ * param_) * std::exp(at);
    }
    case KernelKind::kSlowDecay: {
      if (at == 0.0) return 0.0;
      const double s = param_;
      if (at < 1.0) {
        return std::pow(K + 1.0, -s) * std::pow(at, K + 1) / (1.0 - at);
      }
      if (K == 0) return zeta(s);
      return std::pow(static_cast<double>(K), 1.0 - s) / (s - 1.0);
    }
    case KernelKind::kMonteCarlo:
      break;
  }
  throw DomainError("Monte-Carlo kernels have no extractable coefficients");
}

double DotProductKernel::tail_bound(double t, int K) const {
  const auto& c = cached_coeffs();
  if (K < 0 || static_cast<std::size_t>(K) >= c.b.size()) {
    throw DomainError("series degree exceeds the cached prefix");
  }
  const double at = std::abs(t);
  double abs_sum = 0.0;
  double residual = 0.0;
  double power = 1.0;
  for (int k = 0; k <= K; ++k) {
    abs_sum += c.b[static_cast<std::size_t>(k)] * power;
    residual += c.residual[static_cast<std::size_t>(k)] * power;
    power *= at;
  }
  // Rounding in the partial sum (powers carry up to K ulps) and in the
  // closed form it is compared against.
  const double rounding = (K + 8.0) * kEps * abs_sum;
  return analytic_tail(t, K) + residual + rounding;
}

CoefficientSchedule DotProductKernel::schedule() const {
  switch (kind_) {
    case KernelKind::kModifiedRelu:
      return CoefficientSchedule::from_prefix("modified-relu", cached_coeffs().b);
    case KernelKind::kGaussianOnSphere:
      return CoefficientSchedule::gaussian(param_);
    case KernelKind::kSlowDecay:
      return CoefficientSchedule::power_law(param_);
    case KernelKind::kMonteCarlo:
      break;
  }
  throw DomainError("Monte-Carlo kernels have no coefficient schedule");
}

}  // namespace gravbound
