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

#include "qinterf/analytic_moments.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "qinterf/errors.hpp"
#include "qinterf/thermal_env.hpp"

namespace qinterf {

std::int64_t falling_product(std::int64_t n, int i) {
  if (n < 0 || i < 0) throw InvalidArgument("falling_product needs n >= 0 and i >= 0");
  std::int64_t p = 1;
  for (int j = 0; j <= i; ++j) {
    if (n - j <= 0) return 0;
    p *= n - j;
  }
  return p;
}

namespace {

using Poly = std::vector<BigInt>;  // lowest degree first

Poly multiply(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

BigInt evaluate(const Poly& p, const BigInt& x) {
  BigInt acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool is_zero(const Poly& p) {
  for (const auto& c : p) {
    if (c != 0) return false;
  }
  return true;
}

// p / (x - r), assuming p(r) == 0.
Poly divide_root(const Poly& p, const BigInt& r) {
  Poly q(p.size() - 1, BigInt(0));
  BigInt carry = 0;
  for (std::size_t i = p.size() - 1; i >= 1; --i) {
    carry = p[i] + r * carry;
    q[i - 1] = carry;
  }
  return q;
}

// N^2 (N^2-1)(N^2-4)(N^2-9)
const Poly& s4_denominator() {
  static const Poly d = [] {
    Poly p{0, 0, 1};
    for (int r : {1, 4, 9}) p = multiply(p, Poly{-r, 0, 1});
    return p;
  }();
  return d;
}

// Numerators over the common denominator, keyed by cycle type.
const std::map<std::vector<int>, Poly>& s4_numerators() {
  static const std::map<std::vector<int>, Poly> table = {
      {{1, 1, 1, 1}, {6, 0, -8, 0, 1}},
      {{2, 1, 1}, {0, 4, 0, -1}},
      {{2, 2}, {6, 0, 1}},
      {{3, 1}, {-3, 0, 2}},
      {{4}, {0, -5}},
  };
  return table;
}

Poly class_numerator(const std::map<std::vector<int>, long long>& counts) {
  Poly p(5, BigInt(0));
  for (const auto& [type, count] : counts) {
    auto it = s4_numerators().find(type);
    if (it == s4_numerators().end()) throw InvalidArgument("not an S_4 cycle type");
    for (std::size_t i = 0; i < it->second.size(); ++i) p[i] += BigInt(count) * it->second[i];
  }
  return p;
}

}  // namespace

Rational s4_weingarten(const std::vector<int>& cycle_type, const Rational& N) {
  auto it = s4_numerators().find(cycle_type);
  if (it == s4_numerators().end()) throw InvalidArgument("not an S_4 cycle type");
  auto eval = [&N](const Poly& p) {
    Rational acc = 0;
    for (auto c = p.rbegin(); c != p.rend(); ++c) acc = acc * N + Rational(*c);
    return acc;
  };
  const Rational den = eval(s4_denominator());
  if (den == 0) throw InvalidArgument("S_4 Weingarten function has a pole at this N");
  return eval(it->second) / den;
}

Rational reduced_class_value(const std::map<std::vector<int>, long long>& counts,
                             std::int64_t N) {
  Poly num = class_numerator(counts);
  if (is_zero(num)) return Rational(0);
  Poly den = s4_denominator();
  for (int r : {0, 1, -1, 2, -2, 3, -3}) {
    const BigInt root(r);
    while (den.size() > 1 && num.size() > 1 && evaluate(den, root) == 0 &&
           evaluate(num, root) == 0) {
      den = divide_root(den, root);
      num = divide_root(num, root);
    }
  }
  const BigInt dv = evaluate(den, BigInt(N));
  if (dv == 0) {
    throw ConsistencyError("diagram value has a genuine pole at N = " + std::to_string(N));
  }
  return Rational(evaluate(num, BigInt(N)), dv);
}

namespace {

struct PartitionTerm {
  int blocks;
  std::map<std::vector<int>, long long> counts;
};

// Restricted growth strings of length 4 (the 15 set partitions).
std::vector<std::array<int, 4>> set_partitions4() {
  std::vector<std::array<int, 4>> out;
  std::array<int, 4> cur{};
  std::function<void(int, int)> rec = [&](int i, int hi) {
    if (i == 4) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= hi + 1; ++v) {
      cur[static_cast<std::size_t>(i)] = v;
      rec(i + 1, std::max(hi, v));
    }
  };
  rec(0, -1);
  return out;
}

std::vector<PartitionTerm> partition_terms(const std::array<int, 4>& cols) {
  std::vector<PartitionTerm> terms;
  for (const auto& rp : set_partitions4()) {
    PartitionTerm t;
    t.blocks = 1 + *std::max_element(rp.begin(), rp.end());
    t.counts = class_expansion(two_squares(rp, cols));
    terms.push_back(std::move(t));
  }
  return terms;
}

Rational partition_sum(const std::vector<PartitionTerm>& terms, std::int64_t m,
                       std::int64_t N) {
  Rational total = 0;
  for (const auto& t : terms) {
    const std::int64_t mult = falling_product(m, t.blocks - 1);
    if (mult == 0) continue;
    total += Rational(mult) * reduced_class_value(t.counts, N);
  }
  return total;
}

// Adds coef * value() only for non-zero coef, so closed forms are never
// evaluated at poles they would be multiplied away from.
void add_term(Rational& acc, const BigInt& coef, const std::function<Rational()>& value) {
  if (coef != 0) acc += Rational(coef) * value();
}

}  // namespace

Rational combinator_a12(std::int64_t m, std::int64_t N) {
  static const auto terms = partition_terms({0, 1, 0, 2});
  return partition_sum(terms, m, N);
}

Rational combinator_a13(std::int64_t m, std::int64_t N) {
  static const auto terms = partition_terms({0, 1, 0, 1});
  return partition_sum(terms, m, N);
}

namespace {

MomentParts compute_parts(std::int64_t n, std::int64_t m) {
  const std::int64_t Ni = n * m;
  const Rational N(Ni);
  auto D = [&N](DiagramId id) { return diagram_closed_form<Rational>(id, N); };
  const BigInt m3 = falling_product(m, 3), m2 = falling_product(m, 2), m1 = falling_product(m, 1);
  const BigInt S = m3 + 4 * m2 + 2 * m1;
  const BigInt S2 = 2 * m2 + 4 * m1;
  const BigInt S1 = m1 + m;

  auto a11 = [&] {
    Rational v = 0;
    add_term(v, m3, [&] { return D(DiagramId::D44); });
    add_term(v, 4 * m2, [&] { return D(DiagramId::Da34); });
    add_term(v, 2 * m2, [&] { return D(DiagramId::Db34); });
    add_term(v, m1, [&] { return D(DiagramId::Da24); });
    add_term(v, 2 * m1, [&] { return D(DiagramId::Dc24); });
    add_term(v, 4 * m1, [&] { return D(DiagramId::Db24); });
    add_term(v, m, [&] { return D(DiagramId::D14); });
    return v;
  };
  auto triple = [&](DiagramId a, DiagramId b, DiagramId c) {
    Rational v = 0;
    add_term(v, S, [&] { return D(a); });
    add_term(v, S2, [&] { return D(b); });
    add_term(v, S1, [&] { return D(c); });
    return v;
  };
  auto a31 = [&] { return triple(DiagramId::D44, DiagramId::Db34, DiagramId::Da24); };
  auto a32 = [&] { return triple(DiagramId::D43, DiagramId::Db33, DiagramId::Da23); };
  auto a33 = [&] { return triple(DiagramId::D42, DiagramId::Da32, DiagramId::Da22); };
  auto b2 = [&] { return triple(DiagramId::D44, DiagramId::Da34, DiagramId::Dc24); };
  auto a12 = [&] { return combinator_a12(m, Ni); };
  auto a13 = [&] { return combinator_a13(m, Ni); };

  const BigInt n3 = falling_product(n, 3), n2 = falling_product(n, 2), n1 = falling_product(n, 1);
  const BigInt nm1 = n - 1;
  const BigInt sq = BigInt(n) * n * nm1 * nm1;  // n^2 (n-1)^2

  MomentParts p;
  // A1 + (n-1) A3
  add_term(p.q_f, n3, a11);
  add_term(p.q_f, 4 * n2, a12);
  add_term(p.q_f, 2 * n1, a13);
  add_term(p.q_f, nm1 * n3, a31);
  add_term(p.q_f, nm1 * 4 * n2, a32);
  add_term(p.q_f, nm1 * 2 * n1, a33);
  // A2 + (n-1) A4, with A2 = n^2(n-1)^2 A11 and A4 = n^2(n-1)^2 A31
  add_term(p.q_g_a, sq, a11);
  add_term(p.q_g_a, nm1 * sq, a31);
  // n(n-1) B1 + n(n-1)^2 B2, with B1 = A11
  add_term(p.q_g_b, BigInt(n) * nm1, a11);
  add_term(p.q_g_b, BigInt(n) * nm1 * nm1, b2);
  return p;
}

void check_nm(std::int64_t n, std::int64_t m) {
  if (n < 1) throw DimensionError("system dimension n must be >= 1");
  if (m < 1) throw DimensionError("environment dimension m must be >= 1");
}

}  // namespace

const MomentParts& moment_parts(std::int64_t n, std::int64_t m) {
  check_nm(n, m);
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, std::int64_t>, std::unique_ptr<MomentParts>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, m});
    if (it != cache.end()) return *it->second;
  }
  auto parts = std::make_unique<MomentParts>(compute_parts(n, m));
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, m}];
  if (!slot) slot = std::move(parts);
  return *slot;
}

Rational second_moment_exact(std::int64_t n, std::int64_t m, const Rational& f_s,
                             const Rational& g_s, BTermCoefficient c) {
  const auto& p = moment_parts(n, m);
  return Rational(n) * (f_s * p.q_f + g_s * p.q_g(c));
}

namespace {

// n m (n-1)^2 / (N^2 - 1), zero for N = 1.
Rational mean_core(std::int64_t n, std::int64_t m) {
  const std::int64_t N = n * m;
  if (N == 1) return Rational(0);
  return Rational(BigInt(n) * m * (n - 1) * (n - 1), BigInt(N) * N - 1);
}

struct EnvShape {
  std::int64_t m;
  ThermalRatios ratios;
};

EnvShape env_shape(int n, int d, int s, double x) {
  if (n < 1) throw DimensionError("system dimension n must be >= 1");
  ThermalEnvironment env{d, s, x};
  env.validate();
  return {static_cast<std::int64_t>(env.dimension()), thermal_ratios(d, s, x)};
}

double int_power(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Rational mean_exact(std::int64_t n, std::int64_t m, const Rational& h_s) {
  check_nm(n, m);
  return h_s * mean_core(n, m);
}

double mean_interference(int n, int d, int s, double x) {
  const auto shape = env_shape(n, d, s, x);
  const std::int64_t m = shape.m;
  const std::int64_t N = n * m;
  if (N == 1 || n == 1) return 0.0;
  // Written as Z~(2x)^s n m (n-1)^2 / (Z~(x)^{2s} (N^2-1)) so the x = 0 and
  // x = inf limits come out exactly as mean_limits.
  const double z1 = shifted_partition_z(d, x);
  const double z2 = shifted_partition_z(d, 2.0 * x);
  const double num = int_power(z2, s) * static_cast<double>(n) * static_cast<double>(m) *
                     static_cast<double>(n - 1) * static_cast<double>(n - 1);
  const double den = int_power(z1, 2 * s) * (static_cast<double>(N) * static_cast<double>(N) - 1.0);
  return num / den;
}

std::pair<double, double> mean_limits(int n, std::int64_t m) {
  check_nm(n, m);
  const std::int64_t N = n * m;
  if (N == 1) return {0.0, 0.0};
  const double nn = n;
  const double den = static_cast<double>(N) * static_cast<double>(N) - 1.0;
  const double sq = (nn - 1.0) * (nn - 1.0);
  return {nn * sq / den, static_cast<double>(N) * sq / den};
}

namespace {

struct Split {
  double fluct;  // n (Q_f - Q_g)
  double core;   // n Q_g
  double mean_sq;
};

Split split_parts(int n, std::int64_t m, BTermCoefficient c) {
  const auto& p = moment_parts(n, m);
  const Rational qg = p.q_g(c);
  const Rational M = mean_core(n, m);
  Split out;
  out.fluct = to_double(Rational(n) * (p.q_f - qg));
  out.core = to_double(Rational(n) * qg);
  out.mean_sq = to_double(M * M);
  return out;
}

double variance_from(const EnvShape& shape, int n, BTermCoefficient c) {
  const auto& p = moment_parts(n, shape.m);
  const Rational qg = p.q_g(c);
  const Rational M = mean_core(n, shape.m);
  const double fluct = to_double(Rational(n) * (p.q_f - qg));
  const double rest = to_double(Rational(n) * qg - M * M);
  const double h2 = shape.ratios.h_s * shape.ratios.h_s;
  const double var = shape.ratios.f_s * fluct + h2 * rest;
  if (var < -1e-12) {
    throw ConsistencyError("negative variance " + std::to_string(var) + " at n=" +
                           std::to_string(n) + ", m=" + std::to_string(shape.m));
  }
  return var;
}

}  // namespace

double second_moment(int n, int d, int s, double x, BTermCoefficient c) {
  const auto shape = env_shape(n, d, s, x);
  const Split sp = split_parts(n, shape.m, c);
  const double h2 = shape.ratios.h_s * shape.ratios.h_s;
  return shape.ratios.f_s * sp.fluct + h2 * sp.core;
}

double variance(int n, int d, int s, double x, BTermCoefficient c) {
  return variance_from(env_shape(n, d, s, x), n, c);
}

double std_dev(int n, int d, int s, double x, BTermCoefficient c) {
  return std::sqrt(std::max(variance(n, d, s, x, c), 0.0));
}

MomentReport moment_report(int n, int d, int s, double x, BTermCoefficient c) {
  MomentReport r;
  r.n = n;
  r.d = d;
  r.s = s;
  r.x = x;
  r.mean = mean_interference(n, d, s, x);
  r.second_moment = second_moment(n, d, s, x, c);
  r.variance = variance(n, d, s, x, c);
  r.std_dev = std::sqrt(std::max(r.variance, 0.0));
  return r;
}

const char* regime_name(AsymptoticRegime r) {
  switch (r) {
    case AsymptoticRegime::NLargeXInf: return "n_large_x_inf";
    case AsymptoticRegime::NLargeX0: return "n_large_x_0";
    case AsymptoticRegime::MLargeXInf: return "m_large_x_inf";
    case AsymptoticRegime::MLargeX0: return "m_large_x_0";
  }
  return "unknown";
}

double variance_asymptotics(double n, double m, AsymptoticRegime regime) {
  if (!(n >= 1.0) || !(m >= 1.0)) throw InvalidArgument("variance_asymptotics needs n, m >= 1");
  const double m2 = m * m, m3 = m2 * m, m4 = m2 * m2;
  switch (regime) {
    case AsymptoticRegime::NLargeXInf:
      return 2.0 * (m - 1.0) * (m - 1.0) / (n * m4) -
             4.0 * (m4 - 3.0 * m3 + 3.0 * m2 - 5.0 * m + 3.0) / (m4 * m2 * n * n);
    case AsymptoticRegime::NLargeX0:
      return 2.0 * (m2 - 1.0) / (n * m4 * m2) + (8.0 - 4.0 * m4) / (m4 * m4 * n * n);
    case AsymptoticRegime::MLargeXInf:
      return 2.0 * (n - 1.0) * (n - 1.0) / (n * n * n * m2);
    case AsymptoticRegime::MLargeX0:
      return (n - 1.0) * (n - 1.0) / (n * n * n * m4);
  }
  throw InvalidArgument("unknown asymptotic regime");
}

bool counting_identities_check(std::int64_t n, std::int64_t m) {
  check_nm(n, m);
  const BigInt lhs_n = BigInt(falling_product(n, 3)) + 4 * BigInt(falling_product(n, 2)) +
                       2 * BigInt(falling_product(n, 1));
  const BigInt rhs_n = BigInt(n) * n * (n - 1) * (n - 1);
  const BigInt lhs_m = BigInt(falling_product(m, 3)) + 6 * BigInt(falling_product(m, 2)) +
                       7 * BigInt(falling_product(m, 1)) + m;
  const BigInt rhs_m = BigInt(m) * m * m * m;
  return lhs_n == rhs_n && lhs_m == rhs_m;
}

}  // namespace qinterf
