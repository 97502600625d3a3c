// Copyright 2026 The qinterf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qinterf/thermal_env.hpp"

#include <cmath>
#include <string>

#include "qinterf/errors.hpp"

namespace qinterf {

namespace {

void check_levels(int d) {
  if (d < 1) throw DimensionError("levels per spin must be >= 1, got " + std::to_string(d));
}

void check_x(double x) {
  if (std::isnan(x) || x < 0.0) {
    throw InvalidArgument("inverse temperature x must be >= 0 (or inf)");
  }
}

// 2 * sum_{0 <= a < b < d} exp(-2x(a+b)), i.e. Z~(2x)^2 - Z~(4x) without
// the cancellation of the direct difference.
double shifted_pair_sum(int d, double x) {
  if (d == 1 || std::isinf(x)) return 0.0;
  const double dd = d;
  if (x == 0.0) return dd * (dd - 1.0);
  const double r1 = std::expm1(-2.0 * x * dd) / std::expm1(-2.0 * x);
  const double r2 = std::expm1(-2.0 * x * (dd - 1.0)) / std::expm1(-4.0 * x);
  return 2.0 * std::exp(-2.0 * x) * r1 * r2;
}

}  // namespace

void ThermalEnvironment::validate(std::size_t cap) const {
  if (s < 1) throw DimensionError("number of spins must be >= 1, got " + std::to_string(s));
  check_levels(d);
  check_x(x);
  (void)dimension(cap);
}

std::size_t ThermalEnvironment::dimension(std::size_t cap) const {
  check_levels(d);
  if (s < 1) throw DimensionError("number of spins must be >= 1, got " + std::to_string(s));
  std::size_t m = 1;
  for (int i = 0; i < s; ++i) {
    if (m > cap / static_cast<std::size_t>(d)) {
      throw DimensionError("environment dimension " + std::to_string(d) + "^" +
                           std::to_string(s) + " exceeds cap " + std::to_string(cap));
    }
    m *= static_cast<std::size_t>(d);
  }
  return m;
}

double shifted_partition_z(int d, double x) {
  check_levels(d);
  check_x(x);
  if (x == 0.0) return d;
  if (std::isinf(x)) return 1.0;
  return std::expm1(-static_cast<double>(d) * x) / std::expm1(-x);
}

double partition_z(int d, double x) {
  const double zs = shifted_partition_z(d, x);
  if (std::isinf(x)) return 0.0;
  return std::exp(-x) * zs;
}

std::vector<double> thermal_weights(const ThermalEnvironment& env, std::size_t cap) {
  env.validate(cap);
  const std::size_t m = env.dimension(cap);
  std::vector<double> single(static_cast<std::size_t>(env.d), 0.0);
  if (std::isinf(env.x)) {
    single[0] = 1.0;
  } else {
    const double z = shifted_partition_z(env.d, env.x);
    for (int nu = 0; nu < env.d; ++nu) single[nu] = std::exp(-env.x * nu) / z;
  }

  std::vector<double> w(m, 1.0);
  // Row-major: the last spin varies fastest.
  std::size_t stride = m;
  for (int spin = 0; spin < env.s; ++spin) {
    stride /= static_cast<std::size_t>(env.d);
    for (std::size_t idx = 0; idx < m; ++idx) {
      w[idx] *= single[(idx / stride) % static_cast<std::size_t>(env.d)];
    }
  }
  return w;
}

double h_factor(int d, double x) {
  const double z1 = shifted_partition_z(d, x);
  const double z2 = shifted_partition_z(d, 2.0 * x);
  return z2 / (z1 * z1);
}

double f_factor(int d, double x) { return partition_z(d, 4.0 * x); }

double g_factor(int d, double x) {
  check_levels(d);
  check_x(x);
  if (std::isinf(x)) return 0.0;
  return std::exp(-4.0 * x) * shifted_pair_sum(d, x);
}

double g_factor_product_form(int d, double x) {
  check_levels(d);
  check_x(x);
  if (std::isinf(x)) return 0.0;
  const double dd = d;
  if (x == 0.0) return dd * (dd - 1.0);
  const double num = -std::expm1(-2.0 * x * dd) * -std::expm1(-2.0 * x * (dd - 1.0));
  const double den = -std::expm1(-2.0 * x) * -std::expm1(-4.0 * x);
  return 2.0 * std::exp(-6.0 * x) * num / den;
}

ThermalRatios thermal_ratios(int d, int s, double x) {
  check_levels(d);
  check_x(x);
  if (s < 1) throw DimensionError("number of spins must be >= 1, got " + std::to_string(s));
  const double z1 = shifted_partition_z(d, x);
  const double z1_4 = (z1 * z1) * (z1 * z1);
  const double h = shifted_partition_z(d, 2.0 * x) / (z1 * z1);
  const double a = h * h;
  const double b = shifted_partition_z(d, 4.0 * x) / z1_4;
  const double diff = shifted_pair_sum(d, x) / z1_4;

  ThermalRatios r;
  r.h_s = std::pow(h, s);
  r.f_s = std::pow(b, s);
  // a^s - b^s = (a - b) sum_j a^j b^{s-1-j}
  double geometric = 0.0;
  for (int j = 0; j < s; ++j) geometric += std::pow(a, j) * std::pow(b, s - 1 - j);
  r.g_s = diff * geometric;
  return r;
}

}  // namespace qinterf
