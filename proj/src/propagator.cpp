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

#include "qinterf/propagator.hpp"

#include <cmath>

#include "json.hpp"
#include "qinterf/errors.hpp"

namespace qinterf {

namespace {

void check_weights(const std::vector<double>& w) {
  if (w.empty()) throw DimensionError("environment weights must be non-empty");
  double total = 0.0;
  for (double v : w) {
    if (!(v >= 0.0)) throw InvalidArgument("environment weights must be non-negative");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidArgument("environment weights must sum to 1");
  }
}

}  // namespace

Superoperator::Superoperator(int n, std::vector<complex_t> entries)
    : n_(n), data_(std::move(entries)) {
  if (n < 1) throw DimensionError("superoperator dimension must be >= 1");
  const std::size_t nn = static_cast<std::size_t>(n);
  if (data_.size() != nn * nn * nn * nn) {
    throw DimensionError("superoperator needs n^4 = " + std::to_string(nn * nn * nn * nn) +
                         " entries, got " + std::to_string(data_.size()));
  }
}

Superoperator Superoperator::unitary_channel(const Eigen::MatrixXcd& u) {
  const int n = static_cast<int>(u.rows());
  if (n < 1 || u.cols() != n) throw DimensionError("unitary channel needs a square matrix");
  std::vector<complex_t> e(static_cast<std::size_t>(n) * n * n * n);
  std::size_t k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) e[k++] = u(a, c) * std::conj(u(b, d));
  return Superoperator(n, std::move(e));
}

Superoperator Superoperator::identity(int n) {
  return unitary_channel(Eigen::MatrixXcd::Identity(n, n));
}

Superoperator Superoperator::completely_depolarizing(int n) {
  if (n < 1) throw DimensionError("superoperator dimension must be >= 1");
  std::vector<complex_t> e(static_cast<std::size_t>(n) * n * n * n);
  std::size_t k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) e[k++] = (a == b && c == d) ? 1.0 / n : 0.0;
  return Superoperator(n, std::move(e));
}

double Superoperator::trace_preservation_error() const {
  double worst = 0.0;
  for (int c = 0; c < n_; ++c) {
    for (int d = 0; d < n_; ++d) {
      complex_t t = 0.0;
      for (int a = 0; a < n_; ++a) t += (*this)(a, a, c, d);
      worst = std::max(worst, std::abs(t - complex_t(c == d ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double Superoperator::hermiticity_error() const {
  double worst = 0.0;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        for (int d = 0; d < n_; ++d)
          worst = std::max(worst, std::abs((*this)(a, b, c, d) - std::conj((*this)(b, a, d, c))));
  return worst;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
  if (rho_.rows() < 1 || rho_.rows() != rho_.cols()) {
    throw DimensionError("density matrix must be square with dim >= 1");
  }
  const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (!(herm < kTolerance)) throw InvalidArgument("density matrix is not hermitian");
  if (!(std::abs(rho_.trace() - complex_t(1.0)) < kTolerance)) {
    throw InvalidArgument("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kEigenTolerance) {
    throw InvalidArgument("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw InvalidArgument("state vector must be non-zero");
  const Eigen::VectorXcd v = psi / norm;
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  if (n < 1) throw DimensionError("density matrix dimension must be >= 1");
  return DensityMatrix(Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n));
}

Superoperator build_propagator(const UnitaryMatrix& u, const ThermalEnvironment& env,
                               int n) {
  return build_propagator(u, thermal_weights(env), n);
}

Superoperator build_propagator(const UnitaryMatrix& u, const std::vector<double>& weights,
                               int n) {
  if (n < 1) throw DimensionError("system dimension n must be >= 1");
  check_weights(weights);
  const Eigen::Index m = static_cast<Eigen::Index>(weights.size());
  const Eigen::Index expected = static_cast<Eigen::Index>(n) * m;
  if (u.dim() != expected) {
    throw DimensionError("unitary dimension " + std::to_string(u.dim()) +
                         " does not match expected N = n*m = " + std::to_string(n) + "*" +
                         std::to_string(m) + " = " + std::to_string(expected));
  }
  const auto& U = u.matrix();
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<complex_t> e(nn * nn * nn * nn, 0.0);
  for (int c = 0; c < n; ++c) {
    for (int d = 0; d < n; ++d) {
      for (Eigen::Index nu = 0; nu < m; ++nu) {
        const double w = weights[static_cast<std::size_t>(nu)];
        if (w == 0.0) continue;
        const Eigen::Index col_c = c * m + nu;
        const Eigen::Index col_d = d * m + nu;
        for (int a = 0; a < n; ++a) {
          for (int b = 0; b < n; ++b) {
            complex_t acc = 0.0;
            for (Eigen::Index mu = 0; mu < m; ++mu) {
              acc += U(a * m + mu, col_c) * std::conj(U(b * m + mu, col_d));
            }
            e[((static_cast<std::size_t>(a) * nn + b) * nn + c) * nn + d] += w * acc;
          }
        }
      }
    }
  }
  return Superoperator(n, std::move(e));
}

Eigen::MatrixXcd apply_raw(const Superoperator& p, const Eigen::MatrixXcd& rho) {
  const int n = p.n();
  if (rho.rows() != n || rho.cols() != n) {
    throw DimensionError("state dimension " + std::to_string(rho.rows()) +
                         " does not match superoperator dimension " + std::to_string(n));
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) out(a, b) += p(a, b, c, d) * rho(c, d);
  return out;
}

DensityMatrix apply(const Superoperator& p, const DensityMatrix& rho) {
  return DensityMatrix(apply_raw(p, rho.matrix()));
}

Eigen::MatrixXcd choi_matrix(const Superoperator& p) {
  const int n = p.n();
  Eigen::MatrixXcd c(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int g = 0; g < n; ++g)
        for (int d = 0; d < n; ++d) c(a * n + g, b * n + d) = p(a, b, g, d);
  return c;
}

double min_choi_eigenvalue(const Superoperator& p) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(choi_matrix(p), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Eigen::MatrixXcd evolve_and_trace(const UnitaryMatrix& u, const Eigen::MatrixXcd& rho,
                                  const std::vector<double>& weights) {
  check_weights(weights);
  const Eigen::Index n = rho.rows();
  const Eigen::Index m = static_cast<Eigen::Index>(weights.size());
  if (rho.cols() != n || u.dim() != n * m) {
    throw DimensionError("evolve_and_trace: dimension mismatch, expected N = " +
                         std::to_string(n * m));
  }
  // rho (x) diag(w), system-major
  Eigen::MatrixXcd joint = Eigen::MatrixXcd::Zero(n * m, n * m);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      for (Eigen::Index mu = 0; mu < m; ++mu)
        joint(a * m + mu, b * m + mu) = rho(a, b) * weights[static_cast<std::size_t>(mu)];
  const Eigen::MatrixXcd evolved = u.matrix() * joint * u.matrix().adjoint();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      for (Eigen::Index mu = 0; mu < m; ++mu) out(a, b) += evolved(a * m + mu, b * m + mu);
  return out;
}

std::string to_json(const Superoperator& p) {
  nlohmann::json j;
  j["n"] = p.n();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& z : p.entries()) arr.push_back({z.real(), z.imag()});
  j["entries"] = std::move(arr);
  return j.dump();
}

}  // namespace qinterf
