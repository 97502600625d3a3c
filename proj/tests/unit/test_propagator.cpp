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

#include <cmath>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "qinterf/errors.hpp"
#include "qinterf/propagator.hpp"

using namespace qinterf;

namespace {

Eigen::MatrixXcd random_state(int n, std::uint64_t seed) {
  // rho = A A^dagger / tr, with A the first columns of a Haar unitary
  const auto u = sample_cue(static_cast<std::size_t>(n), {seed, 1000});
  Eigen::MatrixXcd a = u.matrix().leftCols(std::max(1, n / 2 + 1));
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST_CASE("closed system: P is the unitary channel") {
  const auto u = sample_cue(2, {3, 0});
  const auto p = build_propagator(u, std::vector<double>{1.0}, 2);
  const auto ref = Superoperator::unitary_channel(u.matrix());
  for (std::size_t i = 0; i < p.entries().size(); ++i) {
    CHECK(std::abs(p.entries()[i] - ref.entries()[i]) < 1e-15);
  }
  const Eigen::MatrixXcd rho = random_state(2, 4);
  const Eigen::MatrixXcd expect = u.matrix() * rho * u.matrix().adjoint();
  CHECK((apply(p, DensityMatrix(rho)).matrix() - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("one-dimensional system") {
  const auto u = sample_cue(3, {8, 1});
  const auto p = build_propagator(u, ThermalEnvironment{3, 1, 0.4}, 1);
  REQUIRE(p.entries().size() == 1);
  CHECK(std::abs(p(0, 0, 0, 0) - complex_t(1.0)) < 1e-14);
}

TEST_CASE("sampled propagator invariants") {
  const auto u = sample_cue(4, {42, 0});
  const auto p = build_propagator(u, ThermalEnvironment{2, 1, 0.0}, 2);
  CHECK(p.trace_preservation_error() < 1e-10);
  CHECK(p.hermiticity_error() < 1e-12);
  CHECK(min_choi_eigenvalue(p) >= -1e-10);
}

TEST_CASE("apply") {
  const auto id = build_propagator(UnitaryMatrix::identity(3), std::vector<double>{1.0}, 3);
  const Eigen::MatrixXcd rho = random_state(3, 11);
  CHECK((apply(id, DensityMatrix(rho)).matrix() - rho).cwiseAbs().maxCoeff() < 1e-15);

  const auto u = sample_cue(12, {17, 2});
  const auto p = build_propagator(u, ThermalEnvironment{4, 1, 0.3}, 3);
  const auto out = apply(p, DensityMatrix::maximally_mixed(3));
  CHECK(std::abs(out.matrix().trace() - complex_t(1.0)) < 1e-12);

  const auto u2 = sample_cue(4, {18, 0});
  const auto p2 = build_propagator(u2, ThermalEnvironment{2, 1, kZeroTemperature}, 2);
  Eigen::VectorXcd psi(2);
  psi << complex_t(0.6, 0.1), complex_t(-0.2, 0.7);
  const auto rho2 = apply(p2, DensityMatrix::pure(psi));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho2.matrix());
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-10);

  CHECK_THROWS_AS(apply(p2, DensityMatrix::maximally_mixed(3)), DimensionError);
}

TEST_CASE("Choi matrix") {
  const auto u = sample_cue(3, {5, 5});
  const auto c = choi_matrix(Superoperator::unitary_channel(u.matrix()));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c);
  const auto ev = es.eigenvalues();
  CHECK(std::abs(ev(ev.size() - 1) - 3.0) < 1e-12);
  for (Eigen::Index i = 0; i + 1 < ev.size(); ++i) CHECK(std::abs(ev(i)) < 1e-12);

  const auto dep = choi_matrix(Superoperator::completely_depolarizing(3));
  CHECK((dep - Eigen::MatrixXcd::Identity(9, 9) / 3.0).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("partial trace cross-check") {
  std::uint64_t seed = 0;
  for (int n = 1; n <= 8; n += 3)
    for (int m = 1; m <= 8; m += 2)
      for (double x : {0.0, 0.1, 10.0}) {
        const auto w = thermal_weights({m, 1, x});
        const auto u = sample_cue(static_cast<std::size_t>(n * m), {77, seed++});
        const auto p = build_propagator(u, w, n);
        const Eigen::MatrixXcd rho = random_state(n, seed);
        const Eigen::MatrixXcd via_p = apply_raw(p, rho);
        const Eigen::MatrixXcd via_u = evolve_and_trace(u, rho, w);
        CHECK((via_p - via_u).cwiseAbs().maxCoeff() < 1e-12);
      }
}

TEST_CASE("dimension mismatch names N = n*m") {
  const auto u = sample_cue(6, {1, 0});
  try {
    build_propagator(u, ThermalEnvironment{2, 1, 0.0}, 2);
    FAIL("expected a dimension error");
  } catch (const DimensionError& e) {
    CHECK(std::string(e.what()).find("N = n*m = 2*2 = 4") != std::string::npos);
  }
  CHECK_THROWS_AS(build_propagator(u, std::vector<double>{0.5, 0.6}, 3), InvalidArgument);
}

TEST_CASE("density matrix validation") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
  m(0, 1) = complex_t(0.1, 0.0);
  CHECK_THROWS_AS(DensityMatrix{m}, InvalidArgument);
  m(1, 0) = complex_t(0.1, 0.0);
  CHECK_NOTHROW(DensityMatrix{m});
  CHECK_THROWS_AS(DensityMatrix{Eigen::MatrixXcd::Identity(2, 2)}, InvalidArgument);
  Eigen::MatrixXcd neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(DensityMatrix{neg}, InvalidArgument);
}

TEST_CASE("json dump") {
  const auto j = nlohmann::json::parse(to_json(Superoperator::identity(2)));
  CHECK(j["n"] == 2);
  REQUIRE(j["entries"].size() == 16);
  CHECK(j["entries"][0][0] == 1.0);
  CHECK(j["entries"][15][0] == 1.0);
  CHECK(j["entries"][1][0] == 0.0);
}
