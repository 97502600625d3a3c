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

#include "qinterf/interference.hpp"

#include <cmath>
#include <string>

#include "qinterf/errors.hpp"

namespace qinterf {

InterferenceValue InterferenceValue::from_raw(double raw) {
  if (std::isnan(raw) || raw < -kNegativeTolerance) {
    throw ConsistencyError("interference evaluated to " + std::to_string(raw) +
                           ", below the round-off tolerance");
  }
  InterferenceValue v;
  v.raw = raw;
  v.value = raw < 0.0 ? 0.0 : raw;
  return v;
}

InterferenceValue interference_of_map(const Superoperator& p) {
  const int n = p.n();
  double all = 0.0;
  double diag = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) all += std::norm(p(i, i, k, l));
      diag += std::norm(p(i, i, k, k));
    }
  }
  return InterferenceValue::from_raw(all - diag);
}

InterferenceValue interference_unitary(const UnitaryMatrix& u) {
  const auto& U = u.matrix();
  double fourth = 0.0;
  for (Eigen::Index c = 0; c < U.cols(); ++c) {
    for (Eigen::Index r = 0; r < U.rows(); ++r) {
      const double a = std::norm(U(r, c));
      fourth += a * a;
    }
  }
  return InterferenceValue::from_raw(static_cast<double>(U.rows()) - fourth);
}

InterferenceValue interference_fast(const UnitaryMatrix& u, const ThermalEnvironment& env,
                                    int n) {
  return interference_fast(u, thermal_weights(env), n);
}

InterferenceValue interference_fast(const UnitaryMatrix& u, const std::vector<double>& weights,
                                    int n) {
  if (n < 1) throw DimensionError("system dimension n must be >= 1");
  if (weights.empty()) throw DimensionError("environment weights must be non-empty");
  const Eigen::Index m = static_cast<Eigen::Index>(weights.size());
  const Eigen::Index N = static_cast<Eigen::Index>(n) * m;
  if (u.dim() != N) {
    throw DimensionError("unitary dimension " + std::to_string(u.dim()) +
                         " does not match expected N = n*m = " + std::to_string(N));
  }
  using Block = Eigen::Map<const Eigen::MatrixXcd, 0, Eigen::OuterStride<>>;
  const std::complex<double>* base = u.matrix().data();

  double total = 0.0;
  Eigen::MatrixXcd g(n, n);
  for (int a = 0; a < n; ++a) {
    g.setZero();
    for (Eigen::Index nu = 0; nu < m; ++nu) {
      const double w = weights[static_cast<std::size_t>(nu)];
      if (w == 0.0) continue;
      // rows a*m .. a*m+m-1, columns c*m + nu for c = 0..n-1
      Block c(base + nu * N + a * m, m, n, Eigen::OuterStride<>(m * N));
      g.noalias() += w * (c.adjoint() * c);
    }
    total += g.squaredNorm() - g.diagonal().squaredNorm();
  }
  return InterferenceValue::from_raw(total);
}

}  // namespace qinterf
