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

#include "doctest.h"
#include "qinterf/analytic_moments.hpp"
#include "qinterf/errors.hpp"
#include "qinterf/thermal_env.hpp"

using namespace qinterf;

namespace {

double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0 ? 0 : std::abs(a - b) / s;
}

double round5(double v) { return std::round(v * 1e5) / 1e5; }

}  // namespace

TEST_CASE("falling products") {
  CHECK(falling_product(2, 1) == 2);
  CHECK(falling_product(2, 3) == 0);
  CHECK(falling_product(5, 2) == 60);
  CHECK(falling_product(0, 0) == 0);
  CHECK(falling_product(7, 0) == 7);
}

TEST_CASE("counting identities") {
  CHECK(falling_product(2, 3) + 4 * falling_product(2, 2) + 2 * falling_product(2, 1) == 4);
  CHECK(falling_product(3, 3) + 6 * falling_product(3, 2) + 7 * falling_product(3, 1) + 3 == 81);
  for (int n = 1; n <= 40; ++n)
    for (int m = 1; m <= 40; ++m) CHECK(counting_identities_check(n, m));
}

TEST_CASE("closed forms: double and exact paths agree") {
  for (DiagramId id : all_diagrams())
    for (int N : {4, 5, 6, 8, 13}) {
      const double d = diagram_closed_form<double>(id, N);
      const Rational r = diagram_closed_form<Rational>(id, Rational(N));
      CHECK(rel(d, to_double(r)) < 1e-14);
    }
  CHECK(diagram_closed_form<Rational>(DiagramId::E2, Rational(3)) == Rational(-1, 24));
}

TEST_CASE("mean identity from the order-2 diagrams") {
  for (int n = 1; n <= 16; ++n)
    for (int m = 1; m <= 16; ++m)
      for (double x : {0.0, 0.3, 2.0, kZeroTemperature}) {
        const double N = n * m;
        if (N < 2) continue;
        const double f11 = diagram_closed_form<double>(DiagramId::F11, N);
        const double e2 = diagram_closed_form<double>(DiagramId::E2, N);
        const double chain = n * n * (n - 1.0) * h_factor(m, x) * (m * f11 + m * (m - 1.0) * e2);
        const double closed = mean_interference(n, m, 1, x);
        if (closed == 0.0) {
          CHECK(std::abs(chain) < 1e-15);
        } else {
          CHECK(rel(chain, closed) < 1e-13);
        }
      }
}

TEST_CASE("mean examples and limits") {
  CHECK(mean_interference(2, 1, 1, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(mean_interference(4, 2, 1, kZeroTemperature) == doctest::Approx(8.0 / 7.0).epsilon(1e-15));
  CHECK(mean_interference(1, 5, 1, 0.2) == 0.0);
  CHECK(mean_interference(1, 1, 1, 0.2) == 0.0);

  auto [lo, hi] = mean_limits(4, 2);
  CHECK(lo == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
  CHECK(hi == doctest::Approx(8.0 / 7.0).epsilon(1e-15));
  for (int n = 1; n <= 12; ++n)
    for (int d = 1; d <= 6; ++d)
      for (int s = 1; s <= 2; ++s) {
        const std::int64_t m = static_cast<std::int64_t>(std::pow(d, s));
        const auto lim = mean_limits(n, m);
        CHECK(mean_interference(n, d, s, 0.0) == lim.first);
        CHECK(mean_interference(n, d, s, kZeroTemperature) == lim.second);
      }
  const auto unitary = mean_limits(5, 1);
  CHECK(unitary.first == unitary.second);
  CHECK(mean_limits(1, 9).first == 0.0);
}

TEST_CASE("unitary limit in exact arithmetic") {
  for (std::int64_t N = 2; N <= 12; ++N) {
    const Rational second = second_moment_exact(N, 1, Rational(1), Rational(0));
    CHECK(second == Rational(N * (N * N * N - 5 * N + 8) - 4, (N + 1) * (N + 3)));
    CHECK(mean_exact(N, 1, Rational(1)) == Rational(N * (N - 1), N + 1));
    const double sigma = 2.0 / (N + 1.0) * std::sqrt((N - 1.0) / (N + 3.0));
    CHECK(rel(std_dev(static_cast<int>(N), 1, 1, 0.4), sigma) < 1e-12);
  }
  CHECK(std_dev(2, 1, 1, 1.0) == doctest::Approx(0.29814).epsilon(1e-5));
}

TEST_CASE("reference table") {
  struct Row {
    int n, m;
    double mean, sd;
  };
  const Row rows[] = {{4, 2, 0.57285, 0.11719},
                      {4, 4, 0.14293, 0.03255},
                      {4, 8, 0.03702, 0.00864},
                      {8, 2, 1.54109, 0.09409},
                      {8, 4, 0.38796, 0.02666}};
  for (const auto& r : rows) {
    INFO("n=", r.n, " m=", r.m);
    CHECK(round5(mean_interference(r.n, r.m, 1, 0.1)) == doctest::Approx(r.mean).epsilon(1e-12));
    CHECK(round5(std_dev(r.n, r.m, 1, 0.1)) == doctest::Approx(r.sd).epsilon(1e-12));
  }
  // The first mean is 0.5728548, which rounds to 0.57285 (not 0.57286).
  CHECK(mean_interference(4, 2, 1, 0.1) == doctest::Approx(0.5728548).epsilon(1e-7));
}

TEST_CASE("second moment against direct summation") {
  bool printed_disagrees = false;
  for (auto [n, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}})
    for (double x : {0.0, 0.5, 5.0}) {
      INFO("n=", n, " m=", m, " x=", x);
      const double brute = brute_second_moment(n, m, x);
      CHECK(rel(second_moment(n, m, 1, x), brute) < 1e-10);
      if (rel(second_moment(n, m, 1, x, BTermCoefficient::Printed), brute) > 0.01) {
        printed_disagrees = true;
      }
    }
  CHECK(printed_disagrees);
}

TEST_CASE("multi-spin environment against direct summation") {
  for (double x : {0.0, 1.0, kZeroTemperature}) {
    const auto w = thermal_weights({2, 2, x});
    CHECK(rel(second_moment(2, 2, 2, x), brute_second_moment(2, w)) < 1e-10);
    CHECK(rel(mean_interference(2, 2, 2, x), brute_mean(2, w)) < 1e-12);
  }
}

TEST_CASE("multi-spin coincidence at the temperature limits") {
  for (int n : {2, 3, 5}) {
    for (double x : {0.0, kZeroTemperature}) {
      CHECK(rel(mean_interference(n, 2, 2, x), mean_interference(n, 4, 1, x)) < 1e-12);
      CHECK(rel(second_moment(n, 2, 2, x), second_moment(n, 4, 1, x)) < 1e-12);
    }
    CHECK(rel(mean_interference(n, 2, 2, 1.0), mean_interference(n, 4, 1, 1.0)) > 1e-3);
    CHECK(rel(second_moment(n, 2, 2, 1.0), second_moment(n, 4, 1, 1.0)) > 1e-3);
  }
}

TEST_CASE("S4 class values cancel their removable poles") {
  const auto d13 = class_expansion(diagram_structure(DiagramId::D13));
  for (std::int64_t N : {1, 2, 3, 4, 9}) {
    const Rational closed = diagram_closed_form<Rational>(DiagramId::D13, Rational(N));
    CHECK(reduced_class_value(d13, N) == closed);
  }
  const auto d44 = class_expansion(diagram_structure(DiagramId::D44));
  CHECK(reduced_class_value(d44, 7) == diagram_closed_form<Rational>(DiagramId::D44, Rational(7)));
  CHECK_THROWS_AS(reduced_class_value(d44, 3), ConsistencyError);
}

TEST_CASE("reconstructed combinators") {
  // Equivalent readings: the mixed 2-row/3-column entry of the first sum is
  // the transpose of Db32, and the single-row entry of the second sum is
  // 4/(N(N+1)(N+2)(N+3)).
  for (std::int64_t m = 1; m <= 5; ++m)
    for (std::int64_t n : {2, 3, 4}) {
      const Rational N(n * m);
      if (n * m < 4) continue;
      auto D = [&](DiagramId id) { return diagram_closed_form<Rational>(id, N); };
      const Rational m3 = falling_product(m, 3), m2 = falling_product(m, 2), m1 = falling_product(m, 1);
      const Rational a12 = m3 * D(DiagramId::D43) +
                           2 * m2 * (D(DiagramId::Da33) + D(DiagramId::Db33) + D(DiagramId::Dc33)) +
                           m1 * (D(DiagramId::Da23) + D(DiagramId::Dc23) + D(DiagramId::Db32)) +
                           4 * m1 * D(DiagramId::Db23) + Rational(m) * D(DiagramId::D13);
      const Rational d12 = Rational(4) / ((N + 3) * (N + 2) * (N + 1) * N);
      const Rational a13 = m3 * D(DiagramId::D42) + m2 * (4 * D(DiagramId::Da32) + 2 * D(DiagramId::Db32)) +
                           m1 * (2 * D(DiagramId::Da22) + D(DiagramId::Db22) + 4 * D(DiagramId::Dc22)) +
                           Rational(m) * d12;
      CHECK(combinator_a12(m, n * m) == a12);
      CHECK(combinator_a13(m, n * m) == a13);
    }
}

TEST_CASE("variance consistency") {
  for (int n : {2, 4, 9})
    for (int d : {1, 2, 5})
      for (double x : {0.0, 0.1, 3.0, kZeroTemperature}) {
        const auto r = moment_report(n, d, 1, x);
        CHECK(r.variance >= -1e-12);
        CHECK(std::abs(r.variance - (r.second_moment - r.mean * r.mean)) <=
              1e-12 * std::max(1.0, r.second_moment));
        CHECK(r.std_dev == std::sqrt(std::max(r.variance, 0.0)));
      }
}

TEST_CASE("mean grows with n and shrinks with m") {
  for (double x : {0.001, 0.01, 0.1, 10.0})
    for (int n = 2; n <= 64; ++n)
      for (int m = 2; m <= 64; ++m) {
        const double v = mean_interference(n, m, 1, x);
        if (n < 64) CHECK(mean_interference(n + 1, m, 1, x) > v);
        if (m < 64) CHECK(mean_interference(n, m + 1, 1, x) < v);
      }
}

TEST_CASE("asymptotic expansions") {
  using R = AsymptoticRegime;
  for (double n : {10.0, 100.0}) {
    CHECK(variance_asymptotics(n, 1, R::NLargeXInf) == doctest::Approx(4.0 / (n * n)).epsilon(1e-14));
  }
  CHECK(variance_asymptotics(4, 64, R::MLargeX0) ==
        doctest::Approx(9.0 / (64.0 * std::pow(64.0, 4))).epsilon(1e-14));

  const double exact_inf = variance(256, 2, 1, kZeroTemperature);
  CHECK(rel(variance_asymptotics(256, 2, R::NLargeXInf), exact_inf) < 0.05);
  CHECK(rel(variance_asymptotics(256, 2, R::NLargeX0), variance(256, 2, 1, 0.0)) < 0.05);
  CHECK(rel(variance_asymptotics(4, 256, R::MLargeXInf), variance(4, 256, 1, kZeroTemperature)) < 0.05);
  // The m >> 1, x = 0 expansion is low by a factor of two.
  CHECK(variance(4, 256, 1, 0.0) / variance_asymptotics(4, 256, R::MLargeX0) ==
        doctest::Approx(2.0).epsilon(0.01));
}
