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

#include "qinterf/cue_sampler.hpp"

#include <cmath>
#include <string>

#include "qinterf/errors.hpp"

namespace qinterf {

std::mt19937_64 make_stream(const SeedSpec& seed) {
  const auto lo = [](std::uint64_t v) {
    return static_cast<std::uint32_t>(v & 0xffffffffu);
  };
  const auto hi = [](std::uint64_t v) {
    return static_cast<std::uint32_t>(v >> 32);
  };
  std::seed_seq seq{lo(seed.master_seed), hi(seed.master_seed),
                    lo(seed.realization), hi(seed.realization)};
  return std::mt19937_64(seq);
}

double unitarity_error(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) return INFINITY;
  const Eigen::MatrixXcd defect =
      u * u.adjoint() - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff();
}

UnitaryMatrix::UnitaryMatrix(Eigen::MatrixXcd entries) : u_(std::move(entries)) {
  if (u_.rows() == 0 || u_.rows() != u_.cols()) {
    throw DimensionError("unitary matrix must be square with dim >= 1");
  }
  const double err = unitarity_error(u_);
  if (!(err < kTolerance)) {
    throw InvalidArgument("matrix is not unitary: max |UU^dagger - I| = " +
                          std::to_string(err));
  }
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
  if (dim < 1) throw DimensionError("unitary matrix dimension must be >= 1");
  return UnitaryMatrix(Eigen::MatrixXcd::Identity(dim, dim), Trusted{});
}

UnitaryMatrix sample_cue(std::size_t dim, const SeedSpec& seed) {
  if (dim == 0) throw DimensionError("sample_cue: dimension must be >= 1");
  const auto n = static_cast<Eigen::Index>(dim);
  auto rng = make_stream(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Eigen::MatrixXcd z(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(r, c) = {re, im};
    }
  }

  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const auto& packed = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const std::complex<double> r = packed(j, j);
    const double mag = std::abs(r);
    // |r_jj| = 0 has probability zero for a Ginibre matrix.
    if (mag > 0.0) q.col(j) *= r / mag;
  }
  return UnitaryMatrix(std::move(q), UnitaryMatrix::Trusted{});
}

bool HaarSelfTestReport::passed() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return !checks.empty();
}

namespace {

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
  }
};

MomentCheck score(std::string name, const Accumulator& acc, std::size_t count,
                  double expected, double z_threshold) {
  MomentCheck check;
  check.name = std::move(name);
  const double n = static_cast<double>(count);
  check.estimate = acc.sum / n;
  const double var =
      std::max(0.0, (acc.sum_sq - n * check.estimate * check.estimate) / (n - 1.0));
  check.standard_error = std::sqrt(var / n);
  check.expected = expected;
  const double diff = check.estimate - expected;
  if (check.standard_error > 0.0) {
    check.z = diff / check.standard_error;
    check.pass = std::abs(check.z) < z_threshold;
  } else {
    // Degenerate distribution (N = 1): the moment is deterministic.
    check.z = 0.0;
    check.pass = std::abs(diff) < 1e-12;
  }
  return check;
}

}  // namespace

HaarSelfTestReport haar_self_test(std::size_t dim, std::size_t samples,
                                  const SeedSpec& seed, double z_threshold) {
  if (dim == 0) throw DimensionError("haar_self_test: dimension must be >= 1");
  if (samples < 10000) {
    throw InvalidArgument("haar_self_test: needs at least 1e4 samples");
  }
  Accumulator second, fourth, same_row, disjoint;
  for (std::size_t k = 0; k < samples; ++k) {
    const auto u = sample_cue(dim, {seed.master_seed, seed.realization + k});
    const double a00 = std::norm(u(0, 0));
    second.add(a00);
    fourth.add(a00 * a00);
    if (dim > 1) {
      same_row.add(a00 * std::norm(u(0, 1)));
      disjoint.add(a00 * std::norm(u(1, 1)));
    }
  }
  const double n = static_cast<double>(dim);
  HaarSelfTestReport report;
  report.dim = dim;
  report.samples = samples;
  report.checks.push_back(score("<|U_ij|^2>", second, samples, 1.0 / n, z_threshold));
  report.checks.push_back(
      score("<|U_ij|^4>", fourth, samples, 2.0 / (n * (n + 1.0)), z_threshold));
  if (dim > 1) {
    report.checks.push_back(score("<|U_ij|^2 |U_ij'|^2>", same_row, samples,
                                  1.0 / (n * (n + 1.0)), z_threshold));
    report.checks.push_back(score("<|U_ij|^2 |U_i'j'|^2>", disjoint, samples,
                                  1.0 / (n * n - 1.0), z_threshold));
  }
  return report;
}

}  // namespace qinterf
