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

#ifndef QINTERF_ANALYTIC_MOMENTS_HPP
#define QINTERF_ANALYTIC_MOMENTS_HPP

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qinterf/rational.hpp"
#include "qinterf/weingarten_oracle.hpp"

namespace qinterf {

// Closed forms of the 23 diagrams as rational functions of N. Works for
// double and Rational; evaluating at a pole is the caller's problem.
template <class T>
T diagram_closed_form(DiagramId id, const T& N) {
  const T one(1);
  const T N2 = N * N;
  const T p3 = N + 3, p2 = N + 2, p1 = N + 1;
  const T q1 = N2 - 1, q4 = N2 - 4, q9 = N2 - 9;
  switch (id) {
    case DiagramId::F11: return T(one / (N * p1));
    case DiagramId::E2: return T(-one / (N * q1));
    case DiagramId::D13: return T(T(2) / (p3 * p2 * p1 * N));
    case DiagramId::D14: return T(one / (p3 * p2 * p1 * N));
    case DiagramId::Da22: return T((N2 + N + 2) / (p3 * p2 * q1 * N2));
    case DiagramId::Db22: return T(T(8) / (p3 * p2 * q1 * N2));
    case DiagramId::Dc22: return T(T(-4) / (p3 * p2 * q1 * N));
    case DiagramId::Da23: return T(p1 / (p3 * p2 * N2 * (N - 1)));
    case DiagramId::Db23: return T(T(-2) / (p3 * p2 * q1 * N));
    case DiagramId::Dc23: return T(-one / (p3 * p2 * p1 * N2));
    case DiagramId::Da24: return T(one / (p3 * (N - 1) * N2));
    case DiagramId::Db24: return T(-one / (p3 * p2 * q1 * N));
    case DiagramId::Dc24: return T(T(2) / (p3 * p2 * q1 * N2));
    case DiagramId::Da32: return T(-one / (p3 * p2 * p1 * N2));
    case DiagramId::Db32: return T(T(4) / (p3 * p2 * q1 * N2));
    case DiagramId::Da33: return T((3 * N - 1) / (p3 * q4 * q1 * N2));
    case DiagramId::Db33: return T(-(N2 + 1) / (p3 * q4 * q1 * N2));
    case DiagramId::Dc33: return T(T(2) / (p3 * p2 * q1 * N2));
    case DiagramId::Da34: return T(one / (p3 * p2 * q1 * N2));
    case DiagramId::Db34: return T(-(N2 + 2 * N + 2) / (p3 * q4 * q1 * N2));
    case DiagramId::D42: return T(T(2) / (p3 * p2 * q1 * N2));
    case DiagramId::D43: return T(one / (p3 * p2 * q1 * N2));
    case DiagramId::D44: return T((N2 + 6) / (q9 * q4 * q1 * N2));
  }
  throw std::invalid_argument("unknown diagram id");
}

// n[i] = n (n-1) ... (n-i); zero once a factor hits 0.
std::int64_t falling_product(std::int64_t n, int i);

// Wg over S_4 for the given cycle type (descending lengths), as a rational
// function evaluated at N; throws at its poles N in {0,1,2,3}.
Rational s4_weingarten(const std::vector<int>& cycle_type, const Rational& N);

// sum_lambda counts[lambda] Wg_lambda(N) with common factors of numerator
// and denominator cancelled first, so it stays finite wherever the diagram
// itself is (including N < 4).
Rational reduced_class_value(const std::map<std::vector<int>, long long>& counts,
                             std::int64_t N);

// Multiplicity of the cross terms between the two interference factors.
enum class BTermCoefficient { Printed = 1, Derived = 2 };
inline constexpr BTermCoefficient kDefaultBTerm = BTermCoefficient::Derived;

// Pure (n, m) parts of the second moment:
//   Q_f = A1 + (n-1) A3
//   Q_g = A2 + (n-1) A4 + c_B [n(n-1) B1 + n(n-1)^2 B2] = q_g_a + c_B q_g_b
// so that <I^2> = n [f_s Q_f + g_s Q_g] with the thermal ratios f_s, g_s.
struct MomentParts {
  Rational q_f;
  Rational q_g_a;
  Rational q_g_b;

  Rational q_g(BTermCoefficient c) const { return q_g_a + static_cast<int>(c) * q_g_b; }
};

// Cached per (n, m); safe to call concurrently.
const MomentParts& moment_parts(std::int64_t n, std::int64_t m);

// The redacted combinators, rebuilt as sums over set partitions of the four
// environment row labels weighted by m[blocks-1].
Rational combinator_a12(std::int64_t m, std::int64_t N);
Rational combinator_a13(std::int64_t m, std::int64_t N);

// Exact <I^2> for given thermal ratios.
Rational second_moment_exact(std::int64_t n, std::int64_t m, const Rational& f_s,
                             const Rational& g_s, BTermCoefficient c = kDefaultBTerm);

// Exact mean for given h_s.
Rational mean_exact(std::int64_t n, std::int64_t m, const Rational& h_s);

double mean_interference(int n, int d, int s, double x);
// (x -> 0, x -> inf) values of the mean for environment dimension m.
std::pair<double, double> mean_limits(int n, std::int64_t m);
double second_moment(int n, int d, int s, double x, BTermCoefficient c = kDefaultBTerm);
// Throws ConsistencyError below -1e-12.
double variance(int n, int d, int s, double x, BTermCoefficient c = kDefaultBTerm);
double std_dev(int n, int d, int s, double x, BTermCoefficient c = kDefaultBTerm);

struct MomentReport {
  int n = 0;
  int d = 0;
  int s = 0;
  double x = 0.0;
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
  double std_dev = 0.0;
};

MomentReport moment_report(int n, int d, int s, double x, BTermCoefficient c = kDefaultBTerm);

enum class AsymptoticRegime { NLargeXInf, NLargeX0, MLargeXInf, MLargeX0 };

const char* regime_name(AsymptoticRegime r);

// Truncated expansions of the variance:
//   n >> 1, x = inf: 2(m-1)^2/(n m^4) - 4(m^4-3m^3+3m^2-5m+3)/(m^6 n^2)
//   n >> 1, x = 0:   2(m^2-1)/(n m^6) + (8-4m^4)/(m^8 n^2)
//   m >> 1, x = inf: 2(n-1)^2/(n^3 m^2)
//   m >> 1, x = 0:   (n-1)^2/(n^3 m^4)
double variance_asymptotics(double n, double m, AsymptoticRegime regime);

// n[3] + 4n[2] + 2n[1] == n^2 (n-1)^2 and m[3] + 6m[2] + 7m[1] + m == m^4.
bool counting_identities_check(std::int64_t n, std::int64_t m);

}  // namespace qinterf

#endif  // QINTERF_ANALYTIC_MOMENTS_HPP
