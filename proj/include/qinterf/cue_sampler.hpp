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

#ifndef QINTERF_CUE_SAMPLER_HPP
#define QINTERF_CUE_SAMPLER_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace qinterf {

// Identifies the random stream of one realization. The stream is a pure
// function of (master_seed, realization), so results never depend on which
// worker drew a sample or in which order.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t realization = 0;
};

std::mt19937_64 make_stream(const SeedSpec& seed);

// Largest entry of |U U^dagger - I|.
double unitarity_error(const Eigen::MatrixXcd& u);

// Dense N x N unitary. Construction from arbitrary entries checks
// unitarity to kTolerance.
class UnitaryMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit UnitaryMatrix(Eigen::MatrixXcd entries);

  static UnitaryMatrix identity(Eigen::Index dim);

  Eigen::Index dim() const { return u_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return u_; }
  std::complex<double> operator()(Eigen::Index row, Eigen::Index col) const {
    return u_(row, col);
  }

 private:
  struct Trusted {};
  UnitaryMatrix(Eigen::MatrixXcd entries, Trusted) : u_(std::move(entries)) {}

  friend UnitaryMatrix sample_cue(std::size_t dim, const SeedSpec& seed);

  Eigen::MatrixXcd u_;
};

// Haar (CUE) sample: QR decomposition of a complex Ginibre matrix with the
// phases of diag(R) moved into Q.
UnitaryMatrix sample_cue(std::size_t dim, const SeedSpec& seed);

struct MomentCheck {
  std::string name;
  double estimate = 0.0;
  double standard_error = 0.0;
  double expected = 0.0;
  double z = 0.0;
  bool pass = false;
};

struct HaarSelfTestReport {
  std::size_t dim = 0;
  std::size_t samples = 0;
  std::vector<MomentCheck> checks;

  bool passed() const;
};

// Estimates <|U_00|^2>, <|U_00|^4>, <|U_00|^2 |U_01|^2> and
// <|U_00|^2 |U_11|^2> from `samples` draws (realizations seed.realization,
// seed.realization + 1, ...) and scores them against 1/N, 2/(N(N+1)),
// 1/(N(N+1)) and 1/(N^2-1). The two-entry moments are omitted for N = 1.
HaarSelfTestReport haar_self_test(std::size_t dim, std::size_t samples,
                                  const SeedSpec& seed,
                                  double z_threshold = 3.0);

}  // namespace qinterf

#endif  // QINTERF_CUE_SAMPLER_HPP
