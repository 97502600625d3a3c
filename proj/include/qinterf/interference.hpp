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

#ifndef QINTERF_INTERFERENCE_HPP
#define QINTERF_INTERFERENCE_HPP

#include <vector>

#include "qinterf/cue_sampler.hpp"
#include "qinterf/propagator.hpp"
#include "qinterf/thermal_env.hpp"

namespace qinterf {

struct InterferenceValue {
  static constexpr double kNegativeTolerance = 1e-12;

  double value = 0.0;  // clamped at 0
  double raw = 0.0;    // as summed

  // Throws ConsistencyError if raw < -kNegativeTolerance.
  static InterferenceValue from_raw(double raw);
};

// I = sum_{i,k,l} |P_{ii,kl}|^2 - sum_{i,k} |P_{ii,kk}|^2
InterferenceValue interference_of_map(const Superoperator& p);

// N - sum_{ij} |U_ij|^4
InterferenceValue interference_unitary(const UnitaryMatrix& u);

// Interference of the reduced map of U without materializing P:
// I = sum_a sum_{c != d} |sum_nu w_nu sum_mu U_{(am+mu),(cm+nu)} conj(U_{(am+mu),(dm+nu)})|^2.
// O(n^3 m^2) time.
InterferenceValue interference_fast(const UnitaryMatrix& u, const ThermalEnvironment& env,
                                    int n);
InterferenceValue interference_fast(const UnitaryMatrix& u, const std::vector<double>& weights,
                                    int n);

}  // namespace qinterf

#endif  // QINTERF_INTERFERENCE_HPP
