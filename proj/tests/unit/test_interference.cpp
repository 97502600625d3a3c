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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "qinterf/errors.hpp"
#include "qinterf/interference.hpp"

using namespace qinterf;

namespace {

Eigen::MatrixXcd hadamard() {
  Eigen::MatrixXcd h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Eigen::MatrixXcd dft(int n) {
  Eigen::MatrixXcd f(n, n);
  const double pi = std::acos(-1.0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) f(j, k) = std::polar(1.0 / std::sqrt(n), 2.0 * pi * j * k / n);
  return f;
}

}  // namespace

TEST_CASE("Hadamard gives one unit of interference") {
  CHECK(interference_of_map(Superoperator::unitary_channel(hadamard())).value ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(interference_unitary(UnitaryMatrix(hadamard())).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(interference_fast(UnitaryMatrix(hadamard()), ThermalEnvironment{1, 1, 0.3}, 2).value ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("identity and permutations carry no interference") {
  CHECK(interference_of_map(Superoperator::identity(4)).value == 0.0);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(4, 4);
  p(0, 2) = p(1, 0) = p(2, 3) = p(3, 1) = 1.0;
  CHECK(interference_unitary(UnitaryMatrix(p)).value == 0.0);
}

TEST_CASE("Fourier matrix saturates the bound") {
  for (int n : {2, 3, 5, 8}) {
    CHECK(interference_unitary(UnitaryMatrix(dft(n))).value == doctest::Approx(n - 1).epsilon(1e-13));
  }
}

TEST_CASE("fast path equals the full map") {
  auto check = [](int n, int m, double x, std::uint64_t seed) {
    const ThermalEnvironment env{m, 1, x};
    const auto u = sample_cue(static_cast<std::size_t>(n * m), {seed, 0});
    const double slow = interference_of_map(build_propagator(u, env, n)).value;
    const double fast = interference_fast(u, env, n).value;
    CHECK(std::abs(slow - fast) < 1e-12);
  };
  check(2, 2, 0.1, 7);
  check(3, 2, 1.0, 11);
}

TEST_CASE("fast path on 100 random cases") {
  std::uint64_t r = 0;
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= 4; ++m)
      for (double x : {0.0, 0.1, 10.0}) {
        if (r >= 100) break;
        const ThermalEnvironment env{m, 1, x};
        const auto u = sample_cue(static_cast<std::size_t>(n * m), {555, r++});
        const auto p = build_propagator(u, env, n);
        const auto slow = interference_of_map(p);
        const auto fast = interference_fast(u, env, n);
        CHECK(std::abs(slow.value - fast.value) < 1e-12);
        CHECK(fast.value >= 0.0);
      }
}

TEST_CASE("m = 1 reduces to the unitary formula") {
  for (int n : {2, 3, 7}) {
    const auto u = sample_cue(static_cast<std::size_t>(n), {21, static_cast<std::uint64_t>(n)});
    const double a = interference_fast(u, std::vector<double>{1.0}, n).value;
    const double b = interference_unitary(u).value;
    CHECK(std::abs(a - b) < 1e-12);
    CHECK(b <= n - 1 + 1e-12);
  }
}

TEST_CASE("system relabeling leaves I unchanged") {
  const int n = 3, m = 2;
  const auto u = sample_cue(6, {64, 0});
  std::vector<int> perm{2, 0, 1};
  Eigen::MatrixXcd pi = Eigen::MatrixXcd::Zero(6, 6);
  for (int a = 0; a < n; ++a)
    for (int mu = 0; mu < m; ++mu) pi(perm[a] * m + mu, a * m + mu) = 1.0;
  const UnitaryMatrix v(pi * u.matrix() * pi.adjoint());
  const ThermalEnvironment env{2, 1, 0.4};
  CHECK(std::abs(interference_fast(u, env, n).value - interference_fast(v, env, n).value) < 1e-12);
}

TEST_CASE("dimension mismatch") {
  const auto u = sample_cue(6, {1, 0});
  CHECK_THROWS_AS(interference_fast(u, ThermalEnvironment{4, 1, 0.0}, 2), DimensionError);
}

TEST_CASE("round-off clamping") {
  CHECK(InterferenceValue::from_raw(-5e-13).value == 0.0);
  CHECK(InterferenceValue::from_raw(-5e-13).raw == -5e-13);
  CHECK(InterferenceValue::from_raw(0.25).value == 0.25);
  CHECK_THROWS_AS(InterferenceValue::from_raw(-1e-9), ConsistencyError);
}
