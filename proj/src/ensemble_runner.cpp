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

#include "qinterf/ensemble_runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <thread>

#include "qinterf/analytic_moments.hpp"
#include "qinterf/cue_sampler.hpp"
#include "qinterf/errors.hpp"
#include "qinterf/interference.hpp"

namespace qinterf {

namespace {
constexpr std::size_t kBlockSize = 4096;
}

const char* bin_scale_name(BinScale s) { return s == BinScale::Log ? "log" : "linear"; }

void EnsembleConfig::validate() const {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  ThermalEnvironment{d, s, x}.validate();
  if (realizations < 1) throw InvalidArgument("realizations must be >= 1");
  if (bins < 2) throw InvalidArgument("bins must be >= 2");
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
  const std::size_t N = static_cast<std::size_t>(n) * env_dimension();
  if (N > 4096) throw DimensionError("joint dimension n*m = " + std::to_string(N) + " exceeds 4096");
}

std::size_t EnsembleConfig::env_dimension() const {
  return ThermalEnvironment{d, s, x}.dimension();
}

void RunningStats::add(double v) {
  if (count_ == 0) {
    min_ = max_ = v;
  } else {
    min_ = std::min(min_, v);
    max_ = std::max(max_, v);
  }
  ++count_;
  const double delta = v - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (v - mean_);
}

void RunningStats::merge(const RunningStats& o) {
  if (o.count_ == 0) return;
  if (count_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(o.count_);
  const double n = na + nb;
  const double delta = o.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += o.m2_ + delta * delta * na * nb / n;
  count_ += o.count_;
  min_ = std::min(min_, o.min_);
  max_ = std::max(max_, o.max_);
}

double RunningStats::variance() const {
  return count_ < 2 ? 0.0 : std::max(m2_, 0.0) / static_cast<double>(count_ - 1);
}

double RunningStats::std_dev() const { return std::sqrt(variance()); }

double RunningStats::standard_error() const {
  return count_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(count_));
}

double RunningStats::std_dev_standard_error() const {
  return count_ < 2 ? 0.0 : std_dev() / std::sqrt(2.0 * static_cast<double>(count_ - 1));
}

bool RunningStats::bit_identical(const RunningStats& o) const {
  auto same = [](double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; };
  return count_ == o.count_ && same(mean_, o.mean_) && same(m2_, o.m2_) && same(min_, o.min_) &&
         same(max_, o.max_);
}

Histogram Histogram::build(const std::vector<double>& samples, int bins, BinScale scale) {
  if (bins < 2) throw InvalidArgument("histogram needs at least 2 bins");
  if (samples.empty()) throw InvalidArgument("histogram needs at least one sample");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  double lo = *lo_it, hi = *hi_it;
  if (scale == BinScale::Log && lo <= 0.0) scale = BinScale::Linear;
  if (lo == hi) {
    scale = BinScale::Linear;
    const double pad = lo != 0.0 ? std::abs(lo) * 1e-6 : 1e-6;
    lo -= pad;
    hi += pad;
  }

  Histogram h;
  h.scale = scale;
  const auto nb = static_cast<std::size_t>(bins);
  h.edges.resize(nb + 1);
  h.counts.assign(nb, 0);
  const double a = scale == BinScale::Log ? std::log(lo) : lo;
  const double b = scale == BinScale::Log ? std::log(hi) : hi;
  const double width = (b - a) / static_cast<double>(bins);
  for (std::size_t i = 0; i <= nb; ++i) {
    const double t = a + width * static_cast<double>(i);
    h.edges[i] = scale == BinScale::Log ? std::exp(t) : t;
  }
  h.edges.front() = lo;
  h.edges.back() = hi;

  for (double v : samples) {
    const double t = scale == BinScale::Log ? std::log(v) : v;
    auto idx = static_cast<std::ptrdiff_t>(std::floor((t - a) / width));
    idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(nb) - 1);
    // Keep the bin consistent with the stored (rounded) edges.
    while (idx > 0 && v < h.edges[static_cast<std::size_t>(idx)]) --idx;
    while (idx + 1 < static_cast<std::ptrdiff_t>(nb) && v >= h.edges[static_cast<std::size_t>(idx) + 1]) ++idx;
    ++h.counts[static_cast<std::size_t>(idx)];
  }
  h.total = samples.size();
  return h;
}

double Histogram::density(std::size_t bin) const {
  const double width = edges.at(bin + 1) - edges.at(bin);
  return static_cast<double>(counts.at(bin)) / (static_cast<double>(total) * width);
}

bool Histogram::operator==(const Histogram& o) const {
  return edges == o.edges && counts == o.counts && total == o.total && scale == o.scale;
}

EnsembleResult run_ensemble(const EnsembleConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> weights = thermal_weights(ThermalEnvironment{config.d, config.s, config.x});
  const std::size_t N = static_cast<std::size_t>(config.n) * weights.size();
  const std::size_t R = config.realizations;
  const std::size_t blocks = (R + kBlockSize - 1) / kBlockSize;

  EnsembleResult result;
  result.config = config;
  result.samples.assign(R, 0.0);
  std::vector<RunningStats> block_stats(blocks);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(config.workers));

  auto worker = [&](std::size_t id) {
    try {
      for (std::size_t b = next++; b < blocks; b = next++) {
        const std::size_t lo = b * kBlockSize;
        const std::size_t hi = std::min(R, lo + kBlockSize);
        RunningStats local;
        for (std::size_t k = lo; k < hi; ++k) {
          const auto u = sample_cue(N, {config.master_seed, k});
          const double v = interference_fast(u, weights, config.n).value;
          result.samples[k] = v;
          local.add(v);
        }
        block_stats[b] = local;
      }
    } catch (...) {
      errors[id] = std::current_exception();
      next = blocks;
    }
  };

  const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(config.workers), blocks);
  if (nthreads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (const auto& bs : block_stats) result.stats.merge(bs);
  result.histogram = Histogram::build(result.samples, config.bins, config.bin_scale);
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InvalidArgument("KS distance needs at least one sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

LogNormalFit fit_lognormal(const std::vector<double>& samples) {
  LogNormalFit fit;
  std::vector<double> logs;
  logs.reserve(samples.size());
  for (double v : samples) {
    if (v > 0.0) {
      logs.push_back(std::log(v));
    } else {
      ++fit.excluded;
    }
  }
  fit.used = logs.size();
  if (fit.used < 10) {
    throw InvalidArgument("log-normal fit needs at least 10 positive samples, got " +
                          std::to_string(fit.used));
  }
  RunningStats st;
  for (double l : logs) st.add(l);
  fit.mu = st.mean();
  fit.sigma = std::sqrt(st.m2() / static_cast<double>(st.count()));
  if (!(fit.sigma > 0.0)) throw InvalidArgument("log-normal fit is degenerate (sigma = 0)");
  const double mu = fit.mu, sigma = fit.sigma;
  fit.ks_distance = ks_distance(std::move(logs), [mu, sigma](double l) {
    return 0.5 * std::erfc(-(l - mu) / (sigma * std::sqrt(2.0)));
  });
  return fit;
}

double analytic_cdf_check_n2(const std::vector<double>& samples) {
  return ks_distance(samples, [](double v) {
    const double c = std::clamp(v, 0.0, 1.0);
    return 1.0 - std::sqrt(1.0 - c);
  });
}

std::vector<Table1Row> table1_report(std::size_t realizations, std::uint64_t master_seed,
                                     int workers) {
  static constexpr int kRows[5][2] = {{4, 2}, {4, 4}, {4, 8}, {8, 2}, {8, 4}};
  std::vector<Table1Row> rows;
  for (const auto& nm : kRows) {
    EnsembleConfig cfg;
    cfg.n = nm[0];
    cfg.d = nm[1];
    cfg.s = 1;
    cfg.x = 0.1;
    cfg.realizations = realizations;
    cfg.master_seed = master_seed;
    cfg.workers = workers;
    const auto res = run_ensemble(cfg);
    Table1Row r;
    r.n = nm[0];
    r.m = nm[1];
    r.mc_mean = res.stats.mean();
    r.mc_se = res.stats.standard_error();
    r.mc_std = res.stats.std_dev();
    r.mc_std_se = res.stats.std_dev_standard_error();
    r.ana_mean = mean_interference(r.n, r.m, 1, cfg.x);
    r.ana_std = std_dev(r.n, r.m, 1, cfg.x);
    rows.push_back(r);
  }
  return rows;
}

std::vector<GridPoint> moment_grid(const std::vector<int>& n_values,
                                   const std::vector<int>& m_values, double x,
                                   GridQuantity quantity) {
  auto check = [](const std::vector<int>& v, const char* what) {
    if (v.empty()) throw InvalidArgument(std::string(what) + " range is empty");
    for (int k : v) {
      if (k < 2 || k > 1024) throw InvalidArgument(std::string(what) + " values must lie in 2..1024");
    }
  };
  check(n_values, "n");
  check(m_values, "m");
  std::vector<GridPoint> grid;
  grid.reserve(n_values.size() * m_values.size());
  for (int n : n_values) {
    for (int m : m_values) {
      const double q = quantity == GridQuantity::Mean ? mean_interference(n, m, 1, x)
                                                      : std_dev(n, m, 1, x);
      grid.push_back({n, m, std::log(q)});
    }
  }
  return grid;
}

}  // namespace qinterf
