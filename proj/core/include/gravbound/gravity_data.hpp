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

// Synthetic k-body gravity data: a target body and k sources in the unit
// cube, labelled with the x-component of the Newtonian force (G = 1) on the
// target.
//
// File format: one CSV row per instance with columns
//   m_target,x_target,y_target,z_target,m_1,x_1,y_1,z_1,...,label_Fx
// i.e. 4(k+1) features and one label, floats printed with %.17g.

#ifndef GRAVBOUND_GRAVITY_DATA_HPP_
#define GRAVBOUND_GRAVITY_DATA_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace gravbound {

using Vec3 = std::array<double, 3>;

// Largest target-source separation the sampler accepts.
inline constexpr double kMaxMinDist = 0.5;

struct SamplingParams {
  double min_dist = 0.1;
  double mass_max = 10.0;
};

struct GravityInstance {
  int k = 0;
  // Index 0 is the target body.
  std::vector<Vec3> positions;
  std::vector<double> masses;
  double label = 0.0;
  double min_dist = 0.1;

  // Smallest and largest target-to-source distance.
  double r_min() const;
  double r_max() const;
  double empirical_R() const { return r_max() / r_min(); }

  // m_target, x, y, z, then m_j, x_j, y_j, z_j per source.
  std::vector<double> features() const;
};

// F_i = sum_{j != i} m_i m_j (x_j - x_i) / ||x_j - x_i||^3.
Vec3 force(std::span<const Vec3> positions, std::span<const double> masses,
           std::size_t i);

// seed_i = splitmix64(base + (i + 1) * 0x9E3779B97F4A7C15): the splitmix64
// output function applied to a Weyl sequence keyed by the base seed.
std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t index);

GravityInstance sample_instance(int k, std::uint64_t seed,
                                const SamplingParams& params = {});

// Instance i is sample_instance(k, mix_seed(base_seed, i), params).
std::vector<GravityInstance> generate_dataset(int k, std::size_t count,
                                              std::uint64_t base_seed,
                                              const SamplingParams& params = {},
                                              int threads = 0);

std::vector<std::string> dataset_header(int k);
void write_dataset(std::span<const GravityInstance> instances,
                   const std::filesystem::path& path);
// min_dist is not stored in the file; it is attached to every instance.
std::vector<GravityInstance> read_dataset(const std::filesystem::path& path,
                                          double min_dist = 0.1);

// JSON sidecar: k, count, seed, params and quantiles of r_min, r_max and R.
std::string dataset_metadata(std::span<const GravityInstance> instances,
                             std::uint64_t base_seed,
                             const SamplingParams& params);
std::filesystem::path metadata_path(const std::filesystem::path& dataset);

struct RescaledInstance {
  GravityInstance instance;
  // Positions were multiplied by scale (<= 1).
  double scale = 1.0;
  // label multiplier, scale^-2.
  double label_factor = 1.0;
  double r_max_sq = 0.0;
  // Whether r_max^2 <= 2/k after rescaling.
  bool r_max_bound_holds = false;
};

// Scales positions so that the stacked coordinate vector has norm <= 1.
RescaledInstance rescale_instance(const GravityInstance& instance);

}  // namespace gravbound

#endif  // GRAVBOUND_GRAVITY_DATA_HPP_
