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

#include "qinterf/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "qinterf/errors.hpp"

#ifndef QINTERF_VERSION
#define QINTERF_VERSION "unknown"
#endif

namespace qinterf {

std::string version_string() { return QINTERF_VERSION; }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

std::string config_line(const EnsembleResult& r) {
  const auto& c = r.config;
  std::ostringstream os;
  os << "# master_seed=" << c.master_seed << " n=" << c.n << " d=" << c.d << " s=" << c.s
     << " x=" << format_number(c.x) << " realizations=" << c.realizations
     << " bins=" << c.bins << " bin_scale=" << bin_scale_name(c.bin_scale)
     << " version=" << version_string();
  return os.str();
}

}  // namespace

nlohmann::json config_to_json(const EnsembleConfig& c) {
  return {{"n", c.n},
          {"d", c.d},
          {"s", c.s},
          {"x", number(c.x)},
          {"realizations", c.realizations},
          {"master_seed", c.master_seed},
          {"bins", c.bins},
          {"bin_scale", bin_scale_name(c.bin_scale)},
          {"workers", c.workers}};
}

nlohmann::json stats_to_json(const RunningStats& s) {
  return {{"count", s.count()},
          {"mean", s.mean()},
          {"std", s.std_dev()},
          {"variance", s.variance()},
          {"mean_se", s.standard_error()},
          {"std_se", s.std_dev_standard_error()},
          {"min", s.min()},
          {"max", s.max()}};
}

nlohmann::json histogram_to_json(const Histogram& h) {
  nlohmann::json density = nlohmann::json::array();
  for (std::size_t i = 0; i < h.counts.size(); ++i) density.push_back(h.density(i));
  return {{"scale", bin_scale_name(h.scale)},
          {"edges", h.edges},
          {"counts", h.counts},
          {"density", density},
          {"total", h.total}};
}

nlohmann::json run_manifest(const EnsembleResult& r) {
  return {{"tool", "qinterf"},
          {"version", version_string()},
          {"command", "mc"},
          {"config", config_to_json(r.config)},
          {"master_seed", r.config.master_seed},
          {"seconds", r.seconds}};
}

void write_histogram_csv(std::ostream& os, const EnsembleResult& r) {
  os << config_line(r) << '\n';
  const auto& st = r.stats;
  os << "# count=" << st.count() << " mean=" << format_number(st.mean())
     << " std=" << format_number(st.std_dev()) << " mean_se=" << format_number(st.standard_error())
     << " std_se=" << format_number(st.std_dev_standard_error()) << '\n';
  os << "edge_low,edge_high,count,density\n";
  const auto& h = r.histogram;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    os << format_number(h.edges[i]) << ',' << format_number(h.edges[i + 1]) << ',' << h.counts[i]
       << ',' << format_number(h.density(i)) << '\n';
  }
}

void write_samples_csv(std::ostream& os, const EnsembleResult& r) {
  os << config_line(r) << '\n';
  os << "realization,interference\n";
  for (std::size_t k = 0; k < r.samples.size(); ++k) {
    os << k << ',' << format_number(r.samples[k]) << '\n';
  }
}

void write_grid_csv(std::ostream& os, const std::vector<GridPoint>& grid, double x,
                    GridQuantity q) {
  os << "# master_seed=none quantity=" << (q == GridQuantity::Mean ? "ln_mean" : "ln_std")
     << " x=" << format_number(x) << " version=" << version_string() << '\n';
  os << "n,m,value\n";
  for (const auto& p : grid) os << p.n << ',' << p.m << ',' << format_number(p.value) << '\n';
}

void write_table1_csv(std::ostream& os, const std::vector<Table1Row>& rows,
                      std::uint64_t master_seed, std::size_t realizations) {
  os << "# master_seed=" << master_seed << " realizations=" << realizations
     << " x=0.1 version=" << version_string() << '\n';
  os << "n,m,mc_mean,mc_se,ana_mean,mc_std,ana_std\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.m << ',' << format_number(r.mc_mean) << ',' << format_number(r.mc_se)
       << ',' << format_number(r.ana_mean) << ',' << format_number(r.mc_std) << ','
       << format_number(r.ana_std) << '\n';
  }
}

std::vector<double> read_samples_csv(std::istream& is) {
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.rfind(',');
    const std::string field = comma == std::string::npos ? line : line.substr(comma + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(field, &used);
      if (used != field.size()) throw std::invalid_argument(field);
      out.push_back(v);
    } catch (const std::exception&) {
      if (header_seen || !out.empty()) {
        throw InvalidArgument("samples file line " + std::to_string(lineno) +
                              ": not a number: '" + field + "'");
      }
      header_seen = true;
    }
  }
  return out;
}

}  // namespace qinterf
