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

#include "qinterf/weingarten_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <unordered_map>

#include "qinterf/errors.hpp"
#include "qinterf/thermal_env.hpp"

namespace qinterf {

Permutation::Permutation(std::vector<int> mapping) : map_(std::move(mapping)) {
  const int k = static_cast<int>(map_.size());
  if (k < 1 || k > 4) throw InvalidArgument("permutation order must be in 1..4");
  std::vector<bool> seen(map_.size(), false);
  for (int v : map_) {
    if (v < 0 || v >= k || seen[static_cast<std::size_t>(v)]) {
      throw InvalidArgument("permutation mapping is not a bijection");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.k() != k()) throw InvalidArgument("cannot compose permutations of different order");
  std::vector<int> out(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) {
    out[i] = map_[static_cast<std::size_t>(other.map_[i])];
  }
  return Permutation(std::move(out));
}

Permutation Permutation::inverse() const {
  std::vector<int> out(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) out[static_cast<std::size_t>(map_[i])] = static_cast<int>(i);
  return Permutation(std::move(out));
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<int> lengths;
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(map_[j])) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

int Permutation::cycle_count() const { return static_cast<int>(cycle_type().size()); }

std::vector<Permutation> enumerate_permutations(int k) {
  if (k < 1 || k > 4) throw InvalidArgument("permutation order must be in 1..4");
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

namespace {

Eigen::MatrixXd gram_matrix(const std::vector<Permutation>& perms, int N) {
  const auto size = static_cast<Eigen::Index>(perms.size());
  Eigen::MatrixXd g(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      const int c = perms[static_cast<std::size_t>(i)]
                        .compose(perms[static_cast<std::size_t>(j)].inverse())
                        .cycle_count();
      g(i, j) = std::pow(static_cast<double>(N), c);
    }
  }
  return g;
}

void check_order_and_dim(int k, int N) {
  if (k < 1 || k > 4) throw InvalidArgument("Weingarten order k must be in 1..4");
  if (N < 1) throw DimensionError("unitary dimension N must be >= 1");
}

}  // namespace

WeingartenMatrix weingarten(int k, int N) {
  check_order_and_dim(k, N);
  if (N < k) {
    throw InvalidArgument("Weingarten Gram matrix is singular for N = " + std::to_string(N) +
                          " < k = " + std::to_string(k));
  }
  WeingartenMatrix w;
  w.k = k;
  w.N = N;
  w.perms = enumerate_permutations(k);
  const Eigen::MatrixXd g = gram_matrix(w.perms, N);
  w.values = g.fullPivLu().solve(Eigen::MatrixXd::Identity(g.rows(), g.cols()));
  w.residual = (g * w.values - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
  return w;
}

WeingartenMatrix weingarten_pseudo_inverse(int k, int N) {
  check_order_and_dim(k, N);
  WeingartenMatrix w;
  w.k = k;
  w.N = N;
  w.perms = enumerate_permutations(k);
  const Eigen::MatrixXd g = gram_matrix(w.perms, N);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double cutoff = 1e-9 * ev.cwiseAbs().maxCoeff();
  Eigen::VectorXd inv_ev(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    inv_ev(i) = std::abs(ev(i)) > cutoff ? 1.0 / ev(i) : 0.0;
  }
  w.values = es.eigenvectors() * inv_ev.asDiagonal() * es.eigenvectors().transpose();
  w.residual = (g * w.values * g - g).cwiseAbs().maxCoeff();
  return w;
}

namespace {

// Process-wide cache; entries are never modified after insertion.
const WeingartenMatrix& cached_weingarten(int k, int N) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<WeingartenMatrix>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{k, N}];
  if (!slot) {
    slot = std::make_unique<WeingartenMatrix>(N >= k ? weingarten(k, N)
                                                     : weingarten_pseudo_inverse(k, N));
  }
  return *slot;
}

bool same_multiset(std::vector<int> a, std::vector<int> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// Calls f(i, j) for every (sigma_i, tau_j) pairing U factors onto U* factors.
template <class F>
void for_each_pairing(const Monomial& mono, const std::vector<Permutation>& perms, F&& f) {
  const int k = mono.order();
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const auto& s = perms[i];
    bool ok = true;
    for (int l = 0; l < k && ok; ++l) {
      ok = mono.rows[static_cast<std::size_t>(l)] == mono.conj_rows[static_cast<std::size_t>(s[l])];
    }
    if (!ok) continue;
    for (std::size_t j = 0; j < perms.size(); ++j) {
      const auto& t = perms[j];
      bool ok2 = true;
      for (int l = 0; l < k && ok2; ++l) {
        ok2 = mono.cols[static_cast<std::size_t>(l)] == mono.conj_cols[static_cast<std::size_t>(t[l])];
      }
      if (ok2) f(i, j);
    }
  }
}

}  // namespace

void Monomial::validate() const {
  const std::size_t k = rows.size();
  if (cols.size() != k || conj_rows.size() != k || conj_cols.size() != k) {
    throw InvalidArgument("monomial index lists must have equal length");
  }
  if (k < 1 || k > 4) throw InvalidArgument("monomial order must be in 1..4");
  for (const auto* list : {&rows, &cols, &conj_rows, &conj_cols}) {
    for (int v : *list) {
      if (v < 0) throw InvalidArgument("monomial indices must be non-negative");
    }
  }
}

int Monomial::min_dimension() const {
  int hi = 0;
  for (const auto* list : {&rows, &cols, &conj_rows, &conj_cols}) {
    for (int v : *list) hi = std::max(hi, v + 1);
  }
  return hi;
}

double monomial_average(const Monomial& mono, const WeingartenMatrix& w) {
  mono.validate();
  if (w.k != mono.order()) throw InvalidArgument("Weingarten order does not match monomial");
  if (mono.min_dimension() > w.N) throw DimensionError("monomial index exceeds N");
  if (!same_multiset(mono.rows, mono.conj_rows) || !same_multiset(mono.cols, mono.conj_cols)) {
    return 0.0;
  }
  double total = 0.0;
  for_each_pairing(mono, w.perms, [&](std::size_t i, std::size_t j) {
    total += w.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  });
  return total;
}

double monomial_average(const Monomial& mono, int N) {
  mono.validate();
  return monomial_average(mono, cached_weingarten(mono.order(), N));
}

std::map<std::vector<int>, long long> class_expansion(const Monomial& mono) {
  mono.validate();
  std::map<std::vector<int>, long long> counts;
  const auto perms = enumerate_permutations(mono.order());
  for_each_pairing(mono, perms, [&](std::size_t i, std::size_t j) {
    ++counts[perms[i].compose(perms[j].inverse()).cycle_type()];
  });
  return counts;
}

Monomial two_squares(const std::array<int, 4>& r, const std::array<int, 4>& c) {
  Monomial m;
  m.rows = {r[0], r[1], r[2], r[3]};
  m.cols = {c[0], c[1], c[3], c[2]};
  m.conj_rows = {r[0], r[1], r[2], r[3]};
  m.conj_cols = {c[1], c[0], c[2], c[3]};
  return m;
}

namespace {

struct DiagramEntry {
  DiagramId id;
  const char* name;
  const char* rows;
  const char* cols;
};

constexpr DiagramEntry kDiagrams[] = {
    {DiagramId::F11, "F11", "", ""},         {DiagramId::E2, "E2", "", ""},
    {DiagramId::D13, "D13", "0000", "0102"}, {DiagramId::D14, "D14", "0000", "0123"},
    {DiagramId::Da22, "Da22", "0011", "0101"}, {DiagramId::Db22, "Db22", "0110", "0101"},
    {DiagramId::Dc22, "Dc22", "0001", "0101"}, {DiagramId::Da23, "Da23", "0011", "0102"},
    {DiagramId::Db23, "Db23", "0001", "0102"}, {DiagramId::Dc23, "Dc23", "0101", "0102"},
    {DiagramId::Da24, "Da24", "0011", "0123"}, {DiagramId::Db24, "Db24", "0001", "0123"},
    {DiagramId::Dc24, "Dc24", "0101", "0123"}, {DiagramId::Da32, "Da32", "0012", "0101"},
    {DiagramId::Db32, "Db32", "0112", "0101"}, {DiagramId::Da33, "Da33", "0102", "0102"},
    {DiagramId::Db33, "Db33", "0012", "0102"}, {DiagramId::Dc33, "Dc33", "0112", "0102"},
    {DiagramId::Da34, "Da34", "0102", "0123"}, {DiagramId::Db34, "Db34", "0012", "0123"},
    {DiagramId::D42, "D42", "0123", "0101"}, {DiagramId::D43, "D43", "0123", "0102"},
    {DiagramId::D44, "D44", "0123", "0123"},
};

const DiagramEntry& entry(DiagramId id) {
  for (const auto& e : kDiagrams) {
    if (e.id == id) return e;
  }
  throw InvalidArgument("unknown diagram id");
}

std::array<int, 4> labels(const char* s) {
  return {s[0] - '0', s[1] - '0', s[2] - '0', s[3] - '0'};
}

}  // namespace

const std::vector<DiagramId>& all_diagrams() {
  static const std::vector<DiagramId> ids = [] {
    std::vector<DiagramId> v;
    for (const auto& e : kDiagrams) v.push_back(e.id);
    return v;
  }();
  return ids;
}

std::string diagram_name(DiagramId id) { return entry(id).name; }

std::optional<DiagramId> parse_diagram(const std::string& name) {
  for (const auto& e : kDiagrams) {
    if (name == e.name) return e.id;
  }
  return std::nullopt;
}

Monomial diagram_structure(DiagramId id) {
  if (id == DiagramId::F11) return Monomial{{0, 0}, {0, 1}, {0, 0}, {0, 1}};
  if (id == DiagramId::E2) return Monomial{{0, 1}, {0, 1}, {0, 1}, {1, 0}};
  const auto& e = entry(id);
  return two_squares(labels(e.rows), labels(e.cols));
}

double diagram_value(DiagramId id, int N) {
  const Monomial mono = diagram_structure(id);
  if (N < mono.order()) {
    throw InvalidArgument("diagram " + diagram_name(id) + " needs N >= " +
                          std::to_string(mono.order()));
  }
  return monomial_average(mono, cached_weingarten(mono.order(), N));
}

namespace {

// First-occurrence relabeling of rows (over rows, conj_rows) and columns
// (over cols, conj_cols); equal keys have equal averages.
template <std::size_t K>
std::uint64_t canonical_key(const std::array<int, K>& r, const std::array<int, K>& c,
                            const std::array<int, K>& rs, const std::array<int, K>& cs) {
  std::uint64_t key = 0;
  auto encode = [&key](const std::array<int, K>& a, const std::array<int, K>& b) {
    int seen[2 * K];
    int count = 0;
    auto label = [&](int v) {
      for (int i = 0; i < count; ++i) {
        if (seen[i] == v) return i;
      }
      seen[count] = v;
      return count++;
    };
    for (int v : a) key = (key << 3) | static_cast<std::uint64_t>(label(v));
    for (int v : b) key = (key << 3) | static_cast<std::uint64_t>(label(v));
  };
  encode(r, rs);
  encode(c, cs);
  return key;
}

template <std::size_t K>
bool balanced(std::array<int, K> a, std::array<int, K> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

template <std::size_t K>
class MemoAverage {
 public:
  explicit MemoAverage(int N) : w_(cached_weingarten(static_cast<int>(K), N)) {}

  double operator()(const std::array<int, K>& r, const std::array<int, K>& c,
                    const std::array<int, K>& rs, const std::array<int, K>& cs) {
    if (!balanced(r, rs) || !balanced(c, cs)) return 0.0;
    const auto key = canonical_key(r, c, rs, cs);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Monomial m;
    m.rows.assign(r.begin(), r.end());
    m.cols.assign(c.begin(), c.end());
    m.conj_rows.assign(rs.begin(), rs.end());
    m.conj_cols.assign(cs.begin(), cs.end());
    const double v = monomial_average(m, w_);
    memo_.emplace(key, v);
    return v;
  }

 private:
  const WeingartenMatrix& w_;
  std::unordered_map<std::uint64_t, double> memo_;
};

std::vector<double> single_spin_weights(int m, double x) {
  return thermal_weights(ThermalEnvironment{m, 1, x});
}

void check_weights(const std::vector<double>& w) {
  if (w.empty()) throw DimensionError("environment weights must be non-empty");
  double total = 0.0;
  for (double v : w) {
    if (!(v >= 0.0)) throw InvalidArgument("environment weights must be non-negative");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("environment weights must sum to 1");
}

}  // namespace

double brute_mean(int n, int m, double x) { return brute_mean(n, single_spin_weights(m, x)); }

double brute_mean(int n, const std::vector<double>& w) {
  if (n < 1) throw DimensionError("system dimension n must be >= 1");
  check_weights(w);
  const int m = static_cast<int>(w.size());
  const int N = n * m;
  if (N > 64) throw InvalidArgument("brute_mean: n*m = " + std::to_string(N) + " exceeds 64");
  MemoAverage<2> avg(N);
  double total = 0.0;
  for (int a = 0; a < n; ++a)
    for (int g = 0; g < n; ++g)
      for (int d = 0; d < n; ++d) {
        if (g == d) continue;
        for (int mu = 0; mu < m; ++mu)
          for (int mu2 = 0; mu2 < m; ++mu2)
            for (int nu = 0; nu < m; ++nu)
              for (int nu2 = 0; nu2 < m; ++nu2) {
                const double wt = w[static_cast<std::size_t>(nu)] * w[static_cast<std::size_t>(nu2)];
                if (wt == 0.0) continue;
                const int r1 = a * m + mu, r2 = a * m + mu2;
                total += wt * avg({r1, r2}, {g * m + nu, d * m + nu2}, {r1, r2},
                                  {d * m + nu, g * m + nu2});
              }
      }
  return total;
}

double brute_second_moment(int n, int m, double x) {
  return brute_second_moment(n, single_spin_weights(m, x));
}

double brute_second_moment(int n, const std::vector<double>& w) {
  if (n < 1) throw DimensionError("system dimension n must be >= 1");
  check_weights(w);
  const int m = static_cast<int>(w.size());
  const double cost = std::pow(static_cast<double>(n), 6) * std::pow(static_cast<double>(m), 8);
  if (cost > std::pow(3.0, 14)) {
    throw InvalidArgument("brute_second_moment: n^6 m^8 exceeds the 3^14 cost cap");
  }
  MemoAverage<4> avg(n * m);
  auto idx = [m](int a, int mu) { return a * m + mu; };
  double total = 0.0;
  for (int a1 = 0; a1 < n; ++a1)
  for (int a2 = 0; a2 < n; ++a2)
  for (int a3 = 0; a3 < n; ++a3) {
    if (a2 == a3) continue;
    for (int a4 = 0; a4 < n; ++a4)
    for (int a5 = 0; a5 < n; ++a5)
    for (int a6 = 0; a6 < n; ++a6) {
      if (a5 == a6) continue;
      for (int m5 = 0; m5 < m; ++m5)
      for (int m6 = 0; m6 < m; ++m6)
      for (int m7 = 0; m7 < m; ++m7)
      for (int m8 = 0; m8 < m; ++m8) {
        const double wt = w[static_cast<std::size_t>(m5)] * w[static_cast<std::size_t>(m6)] *
                          w[static_cast<std::size_t>(m7)] * w[static_cast<std::size_t>(m8)];
        if (wt == 0.0) continue;
        for (int m1 = 0; m1 < m; ++m1)
        for (int m2 = 0; m2 < m; ++m2)
        for (int m3 = 0; m3 < m; ++m3)
        for (int m4 = 0; m4 < m; ++m4) {
          const std::array<int, 4> r{idx(a1, m1), idx(a1, m2), idx(a4, m3), idx(a4, m4)};
          const std::array<int, 4> c{idx(a2, m5), idx(a3, m6), idx(a6, m7), idx(a5, m8)};
          const std::array<int, 4> cs{idx(a3, m5), idx(a2, m6), idx(a5, m7), idx(a6, m8)};
          total += wt * avg(r, c, r, cs);
        }
      }
    }
  }
  return total;
}

McEstimate mc_monomial_average(const Monomial& mono, int N, std::size_t samples,
                               const SeedSpec& seed) {
  mono.validate();
  if (N < 1) throw DimensionError("unitary dimension N must be >= 1");
  if (mono.min_dimension() > N) throw DimensionError("monomial index exceeds N");
  if (samples < 10000) throw InvalidArgument("mc_monomial_average needs at least 1e4 samples");
  std::complex<double> mean = 0.0;
  double m2 = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    const auto u = sample_cue(static_cast<std::size_t>(N), {seed.master_seed, seed.realization + j});
    std::complex<double> z = 1.0;
    for (int l = 0; l < mono.order(); ++l) {
      const auto i = static_cast<std::size_t>(l);
      z *= u(mono.rows[i], mono.cols[i]) * std::conj(u(mono.conj_rows[i], mono.conj_cols[i]));
    }
    const std::complex<double> delta = z - mean;
    mean += delta / static_cast<double>(j + 1);
    m2 += std::real(delta * std::conj(z - mean));
  }
  McEstimate est;
  est.mean = mean;
  est.samples = samples;
  const double r = static_cast<double>(samples);
  est.standard_error = std::sqrt(m2 / (r * (r - 1.0)));
  return est;
}

}  // namespace qinterf
