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

// Dot-product kernels K(x, x') = sum_k b_k (x . x')^k, their closed forms,
// coefficient schedules and Monte-Carlo estimates of E[phi(z.x) phi(z.x')].

#ifndef GRAVBOUND_KERNELS_HPP_
#define GRAVBOUND_KERNELS_HPP_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gravbound/schedule.hpp"

namespace gravbound {

enum class KernelKind { kModifiedRelu, kGaussianOnSphere, kSlowDecay, kMonteCarlo };
enum class Activation { kRelu, kExponential };

struct MonteCarloSpec {
  Activation activation = Activation::kRelu;
  int width = 1000;
  std::uint64_t seed = 0;
  double sigma_sq = 1.0;
};

// b_0 .. b_K with a bound on the numerical error of each entry.
struct CoefficientPrefix {
  std::vector<double> b;
  std::vector<double> residual;
};

class DotProductKernel {
 public:
  // The modified ReLU kernel (t + 1)/(4 pi) (pi - arccos((t + 1)/2)).
  static DotProductKernel modified_relu(int cache_degree = 500);
  // exp(-||x - x'||^2 / 2) on the sphere of radius r.
  static DotProductKernel gaussian_on_sphere(double r, int cache_degree = 200);
  // sum_{k>=1} k^-s t^k.
  static DotProductKernel slow_decay(double s, int cache_degree = 500);
  static DotProductKernel monte_carlo(const MonteCarloSpec& spec);

  KernelKind kind() const { return kind_; }
  std::string name() const;
  double sphere_radius() const { return param_; }
  double decay_exponent() const { return param_; }
  const MonteCarloSpec& monte_carlo_spec() const { return mc_; }

  // Closed form as a function of t = x . x'. Throws for monte-carlo.
  double eval_dot(double t) const;
  // K(x, x'); the Gaussian uses the distance form, monte-carlo samples.
  double eval(std::span<const double> x, std::span<const double> x_prime) const;

  // The eagerly computed prefix; throws for monte-carlo.
  const CoefficientPrefix& cached_coeffs() const;
  // sum_{k<=K} b_k t^k from the cache.
  double series_eval(double t, int K) const;
  // Bound on |K(t) - series_eval(t, K)|: analytic tail plus rounding and
  // per-coefficient residuals.
  double tail_bound(double t, int K) const;

  CoefficientSchedule schedule() const;

 private:
  DotProductKernel(KernelKind kind, double param, MonteCarloSpec mc,
                   std::shared_ptr<const CoefficientPrefix> cache);

  // Bound on sum_{k>K} b_k |t|^k alone.
  double analytic_tail(double t, int K) const;

  KernelKind kind_;
  double param_ = 0.0;
  MonteCarloSpec mc_;
  std::shared_ptr<const CoefficientPrefix> cache_;
};

double modified_relu_eval(double t);

// (x / sqrt(2), 1 / sqrt(2)). With normalize_first the input is scaled to
// unit norm beforehand.
std::vector<double> input_lift(std::span<const double> x,
                               bool normalize_first = false);

double gaussian_eval(std::span<const double> x, std::span<const double> x_prime);

// sum_{k>=1} k^-s t^k for |t| <= 1 (s > 1 required at |t| = 1).
double slow_decay_eval(double t, double s);

// Taylor coefficients of pi - arccos((1 + t)/2) = pi/2 + arcsin((1 + t)/2).
CoefficientPrefix arccos_factor_coeffs(int K_max);
CoefficientPrefix modified_relu_coeffs(int K_max);

// b_0 .. b_{K_max}; K_max <= 2000.
CoefficientPrefix series_coeffs(const DotProductKernel& kernel, int K_max);

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// (1/m) sum_i phi(z_i . x) phi(z_i . x') with z_i ~ N(0, sigma_sq I).
MonteCarloEstimate mc_kernel_estimate(std::span<const double> x,
                                      std::span<const double> x_prime,
                                      Activation activation, int m,
                                      double sigma_sq, std::uint64_t seed);

// (x . x') (1/m) sum_i 1[z_i . x > 0] 1[z_i . x' > 0], the hidden-layer
// gradient kernel of a ReLU layer; on lifted inputs it converges to
// modified_relu_eval.
MonteCarloEstimate mc_relu_tangent_estimate(std::span<const double> x,
                                            std::span<const double> x_prime,
                                            int m, std::uint64_t seed);

// Two whitespace-separated columns "k b_k" under a '#' header line.
void write_coefficient_table(std::ostream& out, std::span<const double> b);

}  // namespace gravbound

#endif  // GRAVBOUND_KERNELS_HPP_
