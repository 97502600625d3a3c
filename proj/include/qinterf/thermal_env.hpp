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

#ifndef QINTERF_THERMAL_ENV_HPP
#define QINTERF_THERMAL_ENV_HPP

#include <cstddef>
#include <limits>
#include <vector>

namespace qinterf {

// x = +inf stands for zero temperature (ground state only).
inline constexpr double kZeroTemperature = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kDefaultDimensionCap = std::size_t{1} << 20;

// s independent spins with d equidistant levels each, at dimensionless
// inverse temperature x.
struct ThermalEnvironment {
  int d = 1;
  int s = 1;
  double x = 0.0;

  // Throws on d < 1, s < 1, x < 0 or NaN, or d^s > cap.
  void validate(std::size_t cap = kDefaultDimensionCap) const;
  // m = d^s, checked against the cap.
  std::size_t dimension(std::size_t cap = kDefaultDimensionCap) const;
};

// Z(x) = sum_{nu=1..d} exp(-x nu); limit d at x = 0, 0 at x = inf.
double partition_z(int d, double x);
// exp(x) Z(x) = sum_{nu=0..d-1} exp(-x nu); limits d and 1.
double shifted_partition_z(int d, double x);

// Length d^s probability vector, row-major over (nu_1, ..., nu_s).
std::vector<double> thermal_weights(const ThermalEnvironment& env,
                                    std::size_t cap = kDefaultDimensionCap);

// h = Z(2x)/Z(x)^2 = coth(dx/2) tanh(x/2), in [1/d, 1].
double h_factor(int d, double x);
// f = Z(4x).
double f_factor(int d, double x);
// g = Z(2x)^2 - Z(4x).
double g_factor(int d, double x);
// g as an explicit product:
// 2 e^{-6x} (1-e^{-2xd})(1-e^{-2x(d-1)}) / ((1-e^{-2x})(1-e^{-4x})).
double g_factor_product_form(int d, double x);

// Temperature prefactors of the first two moments for s spins, already
// divided by the matching power of Z^s:
//   h_s = (Z(2x)/Z(x)^2)^s
//   f_s = Z(4x)^s / Z(x)^{4s}
//   g_s = (Z(2x)^{2s} - Z(4x)^s) / Z(x)^{4s}
struct ThermalRatios {
  double h_s = 1.0;
  double f_s = 1.0;
  double g_s = 0.0;
};

ThermalRatios thermal_ratios(int d, int s, double x);

}  // namespace qinterf

#endif  // QINTERF_THERMAL_ENV_HPP
