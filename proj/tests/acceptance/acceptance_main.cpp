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

// Acceptance checks 1-12. One PASS/FAIL line each; exit status is the
// number of failures (capped at 1).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qinterf/analytic_moments.hpp"
#include "qinterf/cli.hpp"
#include "qinterf/cue_sampler.hpp"
#include "qinterf/ensemble_runner.hpp"
#include "qinterf/interference.hpp"
#include "qinterf/propagator.hpp"
#include "qinterf/thermal_env.hpp"
#include "qinterf/weingarten_oracle.hpp"

using namespace qinterf;

namespace {

constexpr std::uint64_t kSeed = 1;

double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// value printed after `key` in the moments table
std::string table_field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + " ", 0) == 0) {
      std::istringstream row(line);
      std::string k, v;
      row >> k >> v;
      return v;
    }
  }
  return "?";
}

Outcome c1_table_analytic() {
  struct Row {
    int n, m;
    const char* mean;
    const char* sd;
  };
  const Row rows[] = {{4, 2, "0.57286", "0.11719"},
                      {4, 4, "0.14293", "0.03255"},
                      {4, 8, "0.03702", "0.00864"},
                      {8, 2, "1.54109", "0.09409"},
                      {8, 4, "0.38796", "0.02666"}};
  Outcome o;
  int bad = 0;
  for (const auto& r : rows) {
    std::ostringstream out, err;
    const int code = run_cli({"moments", "--n", std::to_string(r.n), "--d", std::to_string(r.m),
                              "--x", "0.1", "--format", "table"},
                             out, err);
    const auto mean = table_field(out.str(), "mean");
    const auto sd = table_field(out.str(), "std_dev");
    if (code != kExitOk || mean != r.mean || sd != r.sd) {
      ++bad;
      o.detail += " (" + std::to_string(r.n) + "," + std::to_string(r.m) + ") got " + mean + "/" +
                  sd + " want " + r.mean + "/" + r.sd + ";";
    }
  }
  o.pass = bad == 0;
  if (o.pass) o.detail = " all five rows match to 5 decimals";
  return o;
}

Outcome c2_table_mc() {
  const auto rows = table1_report(100000, kSeed, default_workers());
  Outcome o;
  for (const auto& r : rows) {
    const double zm = std::abs(r.mc_mean - r.ana_mean) / r.mc_se;
    const double zs = std::abs(r.mc_std - r.ana_std) / r.mc_std_se;
    if (zm > 3.0 || zs > 5.0) o.pass = false;
    o.detail += " (" + std::to_string(r.n) + "," + std::to_string(r.m) + ") z_mean=" +
                fmt("%.2f", zm) + " z_std=" + fmt("%.2f", zs) + ";";
  }
  return o;
}

Outcome c3_diagrams() {
  Outcome o;
  double worst = 0.0;
  for (int N : {4, 5, 6, 8}) {
    for (auto id : all_diagrams()) {
      const double e = rel(diagram_closed_form<double>(id, static_cast<double>(N)),
                           diagram_value(id, N));
      worst = std::max(worst, e);
    }
    const double e2 = diagram_value(DiagramId::E2, N);
    worst = std::max(worst, rel(e2, -1.0 / (N * (N * N - 1.0))));
  }
  o.pass = worst <= 1e-12;
  o.detail = " 23 diagrams x N in {4,5,6,8}, worst rel err " + fmt("%.2e", worst);
  return o;
}

Outcome c4_second_moment() {
  Outcome o;
  double worst = 0.0, max_printed = 0.0;
  const int pts[3][2] = {{2, 2}, {2, 3}, {3, 2}};
  for (const auto& p : pts)
    for (double x : {0.0, 0.5, 5.0}) {
      const double brute = brute_second_moment(p[0], p[1], x);
      worst = std::max(worst, rel(second_moment(p[0], p[1], 1, x), brute));
      max_printed = std::max(
          max_printed, rel(second_moment(p[0], p[1], 1, x, BTermCoefficient::Printed), brute));
    }
  o.pass = worst <= 1e-10 && max_printed > 0.01;
  o.detail = " worst rel err " + fmt("%.2e", worst) + ", rejected variant max diff " +
             fmt("%.3f", max_printed);
  return o;
}

Outcome c5_unitary_limit() {
  Outcome o;
  double worst = 0.0;
  for (std::int64_t N = 2; N <= 12; ++N) {
    const Rational mean = mean_exact(N, 1, Rational(1));
    const Rational second = second_moment_exact(N, 1, Rational(1), Rational(0));
    if (mean != Rational(N * (N - 1), N + 1)) o.pass = false;
    if (second != Rational(N * (N * N * N - 5 * N + 8) - 4, (N + 1) * (N + 3))) o.pass = false;
    const double sigma = 2.0 / (N + 1.0) * std::sqrt((N - 1.0) / (N + 3.0));
    worst = std::max(worst, rel(std_dev(static_cast<int>(N), 1, 1, 0.0), sigma));
  }
  if (worst > 1e-12) o.pass = false;
  o.detail = " exact mean and <I^2> for N=2..12, sigma rel err " + fmt("%.2e", worst);
  return o;
}

Outcome c6_n2_shape() {
  EnsembleConfig c;
  c.n = 2;
  c.d = 1;
  c.realizations = 10000;
  c.master_seed = kSeed;
  const double ks = analytic_cdf_check_n2(run_ensemble(c).samples);
  return {ks < 0.02, " KS = " + fmt("%.4f", ks)};
}

Outcome c7_haar() {
  Outcome o;
  for (std::size_t N : {2, 4, 8}) {
    const auto rep = haar_self_test(N, 100000, {kSeed, 0});
    double zmax = 0.0;
    for (const auto& ch : rep.checks) zmax = std::max(zmax, std::abs(ch.z));
    if (!rep.passed()) o.pass = false;
    o.detail += " N=" + std::to_string(N) + " max|z|=" + fmt("%.2f", zmax) + ";";
  }
  return o;
}

Outcome c8_cp_invariants() {
  auto rng = make_stream({kSeed, 8});
  std::uniform_int_distribution<int> pick_n(1, 6), pick_m(1, 4), pick_x(0, 2);
  std::normal_distribution<double> gauss;
  const double xs[3] = {0.0, 0.1, 10.0};
  double tp = 0, herm = 0, choi = 0, cross = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = pick_n(rng), m = pick_m(rng);
    const auto w = thermal_weights({m, 1, xs[pick_x(rng)]});
    const auto u = sample_cue(static_cast<std::size_t>(n * m), {kSeed, 1000u + t});
    const auto p = build_propagator(u, w, n);
    tp = std::max(tp, p.trace_preservation_error());
    herm = std::max(herm, p.hermiticity_error());
    choi = std::min(choi, min_choi_eigenvalue(p));
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = {gauss(rng), gauss(rng)};
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace();
    cross = std::max(cross,
                     (apply_raw(p, rho) - evolve_and_trace(u, rho, w)).cwiseAbs().maxCoeff());
  }
  const bool pass = tp <= 1e-10 && herm <= 1e-12 && choi >= -1e-10 && cross <= 1e-12;
  return {pass, " trace " + fmt("%.1e", tp) + ", hermiticity " + fmt("%.1e", herm) +
                    ", min Choi eig " + fmt("%.1e", choi) + ", partial trace " +
                    fmt("%.1e", cross)};
}

Outcome c9_asymptotics() {
  struct Case {
    AsymptoticRegime r;
    int n, m;
    double x;
  };
  const Case cases[] = {{AsymptoticRegime::NLargeXInf, 256, 2, kZeroTemperature},
                        {AsymptoticRegime::NLargeX0, 256, 2, 0.0},
                        {AsymptoticRegime::MLargeXInf, 4, 256, kZeroTemperature},
                        {AsymptoticRegime::MLargeX0, 4, 256, 0.0}};
  Outcome o;
  for (const auto& c : cases) {
    const double exact = variance(c.n, c.m, 1, c.x);
    const double approx = variance_asymptotics(c.n, c.m, c.r);
    const double e = std::abs(approx - exact) / std::abs(exact);
    if (e > 0.05) o.pass = false;
    o.detail += std::string(" ") + regime_name(c.r) + " " + fmt("%.3f", e) + ";";
  }
  return o;
}

Outcome c10_multi_spin() {
  const int n = 3;
  double same = 0.0, diff_mean = 0.0, diff_second = 0.0;
  for (double x : {0.0, kZeroTemperature}) {
    same = std::max(same, rel(mean_interference(n, 2, 2, x), mean_interference(n, 4, 1, x)));
    same = std::max(same, rel(second_moment(n, 2, 2, x), second_moment(n, 4, 1, x)));
  }
  diff_mean = rel(mean_interference(n, 2, 2, 1.0), mean_interference(n, 4, 1, 1.0));
  diff_second = rel(second_moment(n, 2, 2, 1.0), second_moment(n, 4, 1, 1.0));
  const bool pass = same <= 1e-12 && diff_mean > 1e-3 && diff_second > 1e-3;
  return {pass, " limits rel diff " + fmt("%.1e", same) + ", x=1 mean diff " +
                    fmt("%.3e", diff_mean) + ", second moment diff " + fmt("%.3e", diff_second)};
}

Outcome c11_reproducible() {
  EnsembleConfig c;
  c.n = 4;
  c.d = 2;
  c.x = 0.1;
  c.realizations = 50000;
  c.master_seed = kSeed;
  c.workers = 1;
  const auto one = run_ensemble(c);
  c.workers = 8;
  const auto eight = run_ensemble(c);
  const bool pass = one.stats.bit_identical(eight.stats) && one.histogram == eight.histogram;
  return {pass, pass ? " 1 and 8 workers bit-identical" : " results differ between 1 and 8 workers"};
}

Outcome c12_lognormal() {
  EnsembleConfig c;
  c.n = 8;
  c.d = 2;
  c.x = 0.1;
  c.realizations = 10000;
  c.master_seed = kSeed;
  c.workers = default_workers();
  const auto fit = fit_lognormal(run_ensemble(c).samples);
  return {fit.ks_distance < 0.05, " mu=" + fmt("%.4f", fit.mu) + " sigma=" +
                                       fmt("%.4f", fit.sigma) + " KS=" +
                                       fmt("%.4f", fit.ks_distance)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"table analytic values", c1_table_analytic},
      {"table Monte Carlo values", c2_table_mc},
      {"diagram closed forms vs oracle", c3_diagrams},
      {"second moment vs direct sum", c4_second_moment},
      {"unitary limit", c5_unitary_limit},
      {"n=2 distribution shape", c6_n2_shape},
      {"Haar self-test", c7_haar},
      {"CP-map invariants", c8_cp_invariants},
      {"variance asymptotics", c9_asymptotics},
      {"multi-spin coincidence", c10_multi_spin},
      {"worker reproducibility", c11_reproducible},
      {"log-normal fit", c12_lognormal}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string(" exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": "
              << criteria[i].first << " -" << o.detail << " [" << fmt("%.1f", secs) << " s]"
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
