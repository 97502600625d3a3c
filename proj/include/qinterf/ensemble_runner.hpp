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

#ifndef QINTERF_ENSEMBLE_RUNNER_HPP
#define QINTERF_ENSEMBLE_RUNNER_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qinterf/thermal_env.hpp"

namespace qinterf {

enum class BinScale { Linear, Log };

const char* bin_scale_name(BinScale s);

struct EnsembleConfig {
  int n = 4;
  int d = 2;
  int s = 1;
  double x = 0.1;
  std::size_t realizations = 100000;
  std::uint64_t master_seed = 1;
  int bins = 50;
  BinScale bin_scale = BinScale::Log;
  int workers = 1;

  // Throws InvalidArgument / DimensionError.
  void validate() const;
  std::size_t env_dimension() const;
};

// Welford accumulator with Chan's pairwise merge.
class RunningStats {
 public:
  void add(double v);
  void merge(const RunningStats& other);

  std::uint64_t count() const { return count_; }
  double mean() const { return mean_; }
  double m2() const { return m2_; }
  double min() const { return min_; }
  double max() const { return max_; }
  // Sample variance M2/(count-1); 0 for fewer than two values.
  double variance() const;
  double std_dev() const;
  // Standard error of the mean.
  double standard_error() const;
  // Normal-theory s / sqrt(2(R-1)).
  double std_dev_standard_error() const;

  bool bit_identical(const RunningStats& o) const;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

struct Histogram {
  std::vector<double> edges;  // bins + 1, strictly increasing
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  BinScale scale = BinScale::Linear;  // what was actually used

  // Edges span [min, max] of the samples. Log binning falls back to linear
  // when any sample is <= 0; a zero-width range is widened symmetrically.
  static Histogram build(const std::vector<double>& samples, int bins, BinScale scale);

  // count / (total * width)
  double density(std::size_t bin) const;
  bool operator==(const Histogram& o) const;
};

struct EnsembleResult {
  EnsembleConfig config;
  RunningStats stats;
  Histogram histogram;
  std::vector<double> samples;  // indexed by realization
  double seconds = 0.0;
};

// Realization k uses SeedSpec{master_seed, k}. Work is split into fixed
// blocks whose partial stats are merged in block order, so the result does
// not depend on the number of workers.
EnsembleResult run_ensemble(const EnsembleConfig& config);

struct LogNormalFit {
  double mu = 0.0;
  double sigma = 0.0;
  double ks_distance = 0.0;
  std::size_t used = 0;
  std::size_t excluded = 0;  // samples <= 0
};

// ML fit on ln(samples): mu = mean, sigma = population std.
LogNormalFit fit_lognormal(const std::vector<double>& samples);

// Two-sided Kolmogorov-Smirnov statistic against a continuous CDF.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

// KS distance to F(I) = 1 - sqrt(1 - I), the n = 2, m = 1 law.
double analytic_cdf_check_n2(const std::vector<double>& samples);

struct Table1Row {
  int n = 0;
  int m = 0;
  double mc_mean = 0.0;
  double mc_se = 0.0;
  double ana_mean = 0.0;
  double mc_std = 0.0;
  double mc_std_se = 0.0;
  double ana_std = 0.0;
};

// (n, m) in {(4,2), (4,4), (4,8), (8,2), (8,4)} at x = 0.1.
std::vector<Table1Row> table1_report(std::size_t realizations, std::uint64_t master_seed,
                                     int workers = 1);

enum class GridQuantity { Mean, Std };

struct GridPoint {
  int n = 0;
  int m = 0;
  double value = 0.0;  // natural log of the quantity
};

// Analytic only; n, m in 2..1024, single spin of m levels.
std::vector<GridPoint> moment_grid(const std::vector<int>& n_values,
                                   const std::vector<int>& m_values, double x,
                                   GridQuantity quantity);

}  // namespace qinterf

#endif  // QINTERF_ENSEMBLE_RUNNER_HPP
