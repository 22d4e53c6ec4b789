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

#include "gravbound/gravity_data.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "gravbound/errors.hpp"
#include "gravbound/parallel.hpp"
#include "gravbound/table_io.hpp"
#include "json.hpp"

namespace gravbound {
namespace {

constexpr int kMaxRejections = 10'000;

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

nlohmann::ordered_json quantiles(const std::vector<double>& v) {
  nlohmann::ordered_json q;
  for (double p : {0.0, 0.05, 0.25, 0.5, 0.75, 0.95, 1.0}) {
    std::ostringstream key;
    key << "q" << p;
    q[key.str()] = quantile(v, p);
  }
  return q;
}

}  // namespace

double GravityInstance::r_min() const {
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < positions.size(); ++j) {
    r = std::min(r, distance(positions[0], positions[j]));
  }
  return r;
}

double GravityInstance::r_max() const {
  double r = 0.0;
  for (std::size_t j = 1; j < positions.size(); ++j) {
    r = std::max(r, distance(positions[0], positions[j]));
  }
  return r;
}

std::vector<double> GravityInstance::features() const {
  std::vector<double> f;
  f.reserve(4 * positions.size());
  for (std::size_t j = 0; j < positions.size(); ++j) {
    f.push_back(masses[j]);
    f.insert(f.end(), positions[j].begin(), positions[j].end());
  }
  return f;
}

Vec3 force(std::span<const Vec3> positions, std::span<const double> masses,
           std::size_t i) {
  if (positions.size() != masses.size()) {
    throw DomainError("positions and masses differ in length");
  }
  if (i >= positions.size()) throw DomainError("body index out of range");
  Vec3 f{0.0, 0.0, 0.0};
  for (std::size_t j = 0; j < positions.size(); ++j) {
    if (j == i) continue;
    const double r = distance(positions[i], positions[j]);
    if (r == 0.0) {
      std::ostringstream msg;
      msg << "bodies " << i << " and " << j << " coincide";
      throw SingularityError(msg.str());
    }
    const double w = masses[i] * masses[j] / (r * r * r);
    for (int c = 0; c < 3; ++c) f[c] += w * (positions[j][c] - positions[i][c]);
  }
  return f;
}

std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t index) {
  std::uint64_t z = base_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

GravityInstance sample_instance(int k, std::uint64_t seed,
                                const SamplingParams& params) {
  if (k < 1) throw DomainError("k must be >= 1");
  if (!(params.min_dist > 0.0)) throw DomainError("min_dist must be positive");
  // Beyond 0.5 a target near the cube centre leaves almost no admissible
  // volume, so rejection sampling is not guaranteed to terminate.
  if (params.min_dist > kMaxMinDist) {
    std::ostringstream msg;
    msg << "min_dist " << params.min_dist << " exceeds " << kMaxMinDist
        << "; source placement is geometrically infeasible for rejection sampling";
    throw GeometryError(msg.str());
  }
  if (!(params.mass_max >= 0.0) || !std::isfinite(params.mass_max)) {
    throw DomainError("mass_max must be finite and nonnegative");
  }
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> mass(0.0, params.mass_max);
  auto point = [&] { return Vec3{unit(gen), unit(gen), unit(gen)}; };

  GravityInstance inst;
  inst.k = k;
  inst.min_dist = params.min_dist;
  inst.positions.reserve(static_cast<std::size_t>(k) + 1);
  inst.positions.push_back(point());
  for (int j = 0; j < k; ++j) {
    int rejections = 0;
    Vec3 p = point();
    while (distance(p, inst.positions[0]) < params.min_dist) {
      if (++rejections >= kMaxRejections) {
        std::ostringstream msg;
        msg << kMaxRejections << " consecutive rejections placing source " << j + 1
            << " at distance >= " << params.min_dist << " from the target";
        throw GeometryError(msg.str());
      }
      p = point();
    }
    inst.positions.push_back(p);
  }
  inst.masses.resize(inst.positions.size());
  for (auto& m : inst.masses) m = mass(gen);
  inst.label = force(inst.positions, inst.masses, 0)[0];
  return inst;
}

std::vector<GravityInstance> generate_dataset(int k, std::size_t count,
                                              std::uint64_t base_seed,
                                              const SamplingParams& params,
                                              int threads) {
  std::vector<GravityInstance> out(count);
  parallel_for(count, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = sample_instance(k, mix_seed(base_seed, i), params);
    }
  });
  return out;
}

std::vector<std::string> dataset_header(int k) {
  std::vector<std::string> h{"m_target", "x_target", "y_target", "z_target"};
  for (int j = 1; j <= k; ++j) {
    const std::string s = std::to_string(j);
    for (const char* name : {"m_", "x_", "y_", "z_"}) h.push_back(name + s);
  }
  h.push_back("label_Fx");
  return h;
}

void write_dataset(std::span<const GravityInstance> instances,
                   const std::filesystem::path& path) {
  NumericTable table;
  if (!instances.empty()) {
    const int k = instances.front().k;
    table.header = dataset_header(k);
    table.values.reserve(instances.size() * table.cols());
    for (const auto& inst : instances) {
      if (inst.k != k) throw DomainError("dataset mixes different k");
      const auto f = inst.features();
      table.values.insert(table.values.end(), f.begin(), f.end());
      table.values.push_back(inst.label);
    }
  }
  atomic_write(path, instances.empty() ? std::string() : format_numeric_csv(table));
}

std::vector<GravityInstance> read_dataset(const std::filesystem::path& path,
                                          double min_dist) {
  const NumericTable table = read_numeric_csv(path);
  std::vector<GravityInstance> out;
  if (table.cols() == 0) return out;
  const std::size_t cols = table.cols();
  if (cols < 9 || (cols - 1) % 4 != 0) {
    std::ostringstream msg;
    msg << "header has " << cols << " columns; expected 4(k+1)+1 with k >= 1";
    throw ParseError(msg.str(), 1);
  }
  const int k = static_cast<int>((cols - 1) / 4) - 1;
  out.reserve(table.rows());
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const auto row = table.row(r);
    GravityInstance inst;
    inst.k = k;
    inst.min_dist = min_dist;
    for (int j = 0; j <= k; ++j) {
      const std::size_t o = 4 * static_cast<std::size_t>(j);
      inst.masses.push_back(row[o]);
      inst.positions.push_back({row[o + 1], row[o + 2], row[o + 3]});
    }
    inst.label = row[cols - 1];
    out.push_back(std::move(inst));
  }
  return out;
}

std::string dataset_metadata(std::span<const GravityInstance> instances,
                             std::uint64_t base_seed,
                             const SamplingParams& params) {
  std::vector<double> r_min;
  std::vector<double> r_max;
  std::vector<double> ratio;
  for (const auto& inst : instances) {
    r_min.push_back(inst.r_min());
    r_max.push_back(inst.r_max());
    ratio.push_back(inst.empirical_R());
  }
  nlohmann::ordered_json doc;
  doc["k"] = instances.empty() ? 0 : instances.front().k;
  doc["count"] = instances.size();
  doc["seed"] = base_seed;
  doc["seed_mixing"] = "splitmix64(base + (i + 1) * 0x9E3779B97F4A7C15)";
  doc["params"] = {{"min_dist", params.min_dist}, {"mass_max", params.mass_max}};
  doc["r_min"] = quantiles(r_min);
  doc["r_max"] = quantiles(r_max);
  doc["empirical_R"] = quantiles(ratio);
  return doc.dump(2) + "\n";
}

std::filesystem::path metadata_path(const std::filesystem::path& dataset) {
  std::filesystem::path p = dataset;
  p += ".meta.json";
  return p;
}

RescaledInstance rescale_instance(const GravityInstance& instance) {
  double norm_sq = 0.0;
  for (const auto& p : instance.positions) {
    for (double c : p) norm_sq += c * c;
  }
  const double norm = std::sqrt(norm_sq);
  RescaledInstance out;
  out.instance = instance;
  out.scale = norm > 1.0 ? 1.0 / norm : 1.0;
  out.label_factor = 1.0 / (out.scale * out.scale);
  if (out.scale != 1.0) {
    for (auto& p : out.instance.positions) {
      for (double& c : p) c *= out.scale;
    }
    out.instance.min_dist *= out.scale;
    out.instance.label = force(out.instance.positions, out.instance.masses, 0)[0];
  }
  const double r = out.instance.r_max();
  out.r_max_sq = r * r;
  out.r_max_bound_holds = out.r_max_sq <= 2.0 / instance.k;
  return out;
}

}  // namespace gravbound
