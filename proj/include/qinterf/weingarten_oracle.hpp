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

#ifndef QINTERF_WEINGARTEN_ORACLE_HPP
#define QINTERF_WEINGARTEN_ORACLE_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qinterf/cue_sampler.hpp"

namespace qinterf {

// Bijection on {0..k-1}, 1 <= k <= 4.
class Permutation {
 public:
  explicit Permutation(std::vector<int> mapping);

  int k() const { return static_cast<int>(map_.size()); }
  int operator[](int i) const { return map_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& mapping() const { return map_; }

  // (this * other)(i) = this(other(i))
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;
  int cycle_count() const;
  // Cycle lengths, descending.
  std::vector<int> cycle_type() const;

  bool operator==(const Permutation& o) const { return map_ == o.map_; }

 private:
  std::vector<int> map_;
};

// All k! permutations in lexicographic order of their one-line notation.
std::vector<Permutation> enumerate_permutations(int k);

// Inverse of G(sigma, tau) = N^{#cycles(sigma tau^-1)} over S_k.
struct WeingartenMatrix {
  int k = 0;
  int N = 0;
  std::vector<Permutation> perms;
  Eigen::MatrixXd values;
  double residual = 0.0;  // max |G W - I|; for the pseudo-inverse, max |G W G - G|
};

// Dense solve of G W = I. Refuses N < k (G is singular there).
WeingartenMatrix weingarten(int k, int N);
// Moore-Penrose inverse of G; agrees with weingarten() for N >= k and still
// yields the correct Haar averages for N < k.
WeingartenMatrix weingarten_pseudo_inverse(int k, int N);

// prod_l U(rows[l], cols[l]) * prod_l conj(U(conj_rows[l], conj_cols[l])),
// 0-based indices.
struct Monomial {
  std::vector<int> rows;
  std::vector<int> cols;
  std::vector<int> conj_rows;
  std::vector<int> conj_cols;

  int order() const { return static_cast<int>(rows.size()); }
  // Throws on ragged lists, k outside 1..4 or negative indices.
  void validate() const;
  // Largest index used + 1.
  int min_dimension() const;
};

// Haar average of the monomial: sum over (sigma, tau) with
// rows[l] = conj_rows[sigma(l)], cols[l] = conj_cols[tau(l)] of W(sigma, tau).
// Zero when the U and U* index multisets differ.
double monomial_average(const Monomial& mono, const WeingartenMatrix& w);
// Uses weingarten(k, N) for N >= k and the pseudo-inverse below that.
double monomial_average(const Monomial& mono, int N);

// Number of contributing (sigma, tau) pairs per cycle type of sigma tau^-1;
// the average is sum_lambda count * Wg_lambda(N).
std::map<std::vector<int>, long long> class_expansion(const Monomial& mono);

// Order-4 diagram built from two 2x2 "squares":
//   U:  (r1,c1) (r2,c2) (r3,c4) (r4,c3)
//   U*: (r1,c2) (r2,c1) (r3,c3) (r4,c4)
// Equal labels merge vertices.
Monomial two_squares(const std::array<int, 4>& rows, const std::array<int, 4>& cols);

enum class DiagramId {
  F11, E2,
  D13, D14,
  Da22, Db22, Dc22,
  Da23, Db23, Dc23,
  Da24, Db24, Dc24,
  Da32, Db32,
  Da33, Db33, Dc33,
  Da34, Db34,
  D42, D43, D44,
};

const std::vector<DiagramId>& all_diagrams();
std::string diagram_name(DiagramId id);
std::optional<DiagramId> parse_diagram(const std::string& name);

// Canonical index assignment of a diagram. Row/column label patterns for the
// order-4 entries (rows | cols), fed to two_squares:
//   D14 0000|0123  D13 0000|0102
//   D44 0123|0123  Db34 0012|0123  Da34 0102|0123
//   Da24 0011|0123 Dc24 0101|0123  Db24 0001|0123
//   D43 0123|0102  Db33 0012|0102  Da33 0102|0102  Dc33 0112|0102
//   Da23 0011|0102 Db23 0001|0102  Dc23 0101|0102
//   D42 0123|0101  Da32 0012|0101  Db32 0112|0101
//   Da22 0011|0101 Db22 0110|0101  Dc22 0001|0101
// F11 = <U00 U01 U*00 U*01>, E2 = <U00 U11 U*01 U*10>.
Monomial diagram_structure(DiagramId id);
// Exact Weingarten value; refuses N < order.
double diagram_value(DiagramId id, int N);

// <I> by direct summation of order-2 averages. Requires n*m <= 64.
double brute_mean(int n, int m, double x);
double brute_mean(int n, const std::vector<double>& weights);

// <I^2> by direct summation of order-4 averages over six system and eight
// environment indices. Requires n^6 m^8 <= 3^14.
double brute_second_moment(int n, int m, double x);
double brute_second_moment(int n, const std::vector<double>& weights);

struct McEstimate {
  std::complex<double> mean;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

// Sample mean of the monomial over CUE draws (realizations seed.realization + j).
McEstimate mc_monomial_average(const Monomial& mono, int N, std::size_t samples,
                               const SeedSpec& seed);

}  // namespace qinterf

#endif  // QINTERF_WEINGARTEN_ORACLE_HPP
