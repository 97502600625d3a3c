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

#ifndef QINTERF_PROPAGATOR_HPP
#define QINTERF_PROPAGATOR_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qinterf/cue_sampler.hpp"
#include "qinterf/thermal_env.hpp"

namespace qinterf {

using complex_t = std::complex<double>;

// Rank-4 tensor P_{ab,cd} (a,b,c,d in 0..n-1) acting as
// rho'_{ab} = sum_{cd} P_{ab,cd} rho_{cd}. Immutable once built.
class Superoperator {
 public:
  Superoperator(int n, std::vector<complex_t> entries);

  static Superoperator unitary_channel(const Eigen::MatrixXcd& u);
  static Superoperator identity(int n);
  static Superoperator completely_depolarizing(int n);

  int n() const { return n_; }
  complex_t operator()(int a, int b, int c, int d) const {
    return data_[index(a, b, c, d)];
  }
  const std::vector<complex_t>& entries() const { return data_; }

  // max |sum_a P_{aa,cd} - delta_cd|
  double trace_preservation_error() const;
  // max |P_{ab,cd} - conj(P_{ba,dc})|
  double hermiticity_error() const;

 private:
  std::size_t index(int a, int b, int c, int d) const {
    const std::size_t n = static_cast<std::size_t>(n_);
    return ((static_cast<std::size_t>(a) * n + b) * n + c) * n + d;
  }

  int n_;
  std::vector<complex_t> data_;
};

class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-12;
  static constexpr double kEigenTolerance = 1e-10;

  // Validates hermiticity, unit trace and positivity.
  explicit DensityMatrix(Eigen::MatrixXcd rho);

  static DensityMatrix pure(const Eigen::VectorXcd& psi);
  static DensityMatrix maximally_mixed(int n);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return rho_; }

 private:
  Eigen::MatrixXcd rho_;
};

// P_{ab,cd} = sum_{mu,nu} w_nu U_{(a m + mu),(c m + nu)} conj(U_{(b m + mu),(d m + nu)})
// with joint index = system * m + environment.
Superoperator build_propagator(const UnitaryMatrix& u, const ThermalEnvironment& env,
                               int n);
// Same for an arbitrary diagonal environment state; weights must be a
// probability vector.
Superoperator build_propagator(const UnitaryMatrix& u, const std::vector<double>& weights,
                               int n);

DensityMatrix apply(const Superoperator& p, const DensityMatrix& rho);
// Raw action without validating the result.
Eigen::MatrixXcd apply_raw(const Superoperator& p, const Eigen::MatrixXcd& rho);

// C_{(a,c),(b,d)} = P_{ab,cd}; positive semidefinite iff P is CP.
Eigen::MatrixXcd choi_matrix(const Superoperator& p);
double min_choi_eigenvalue(const Superoperator& p);

// tr_env[ U (rho x diag(w)) U^dagger ] by dense multiplication.
Eigen::MatrixXcd evolve_and_trace(const UnitaryMatrix& u, const Eigen::MatrixXcd& rho,
                                  const std::vector<double>& weights);

// Debug dump: {"n": n, "entries": [[re, im], ...]} in row-major (a,b,c,d).
std::string to_json(const Superoperator& p);

}  // namespace qinterf

#endif  // QINTERF_PROPAGATOR_HPP
