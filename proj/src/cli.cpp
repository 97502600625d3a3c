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

#include "qinterf/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qinterf/analytic_moments.hpp"
#include "qinterf/ensemble_runner.hpp"
#include "qinterf/errors.hpp"
#include "qinterf/io.hpp"
#include "qinterf/thermal_env.hpp"
#include "qinterf/weingarten_oracle.hpp"

namespace qinterf {

double parse_temperature(const std::string& text) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t == "inf" || t == "infinity") return kZeroTemperature;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse x = '" + text + "'");
  }
  if (used != t.size()) throw InvalidArgument("cannot parse x = '" + text + "'");
  if (std::isnan(v) || v < 0.0) throw InvalidArgument("x must be >= 0 or inf");
  return v;
}

namespace {

int parse_int(const std::string& s) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not an integer: '" + s + "'");
  }
  if (used != s.size() || v < INT32_MIN || v > INT32_MAX) {
    throw InvalidArgument("not an integer: '" + s + "'");
  }
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

std::vector<int> parse_int_range(const std::string& text) {
  if (text.empty()) throw InvalidArgument("empty range");
  if (text.find(',') != std::string::npos) {
    std::vector<int> out;
    for (const auto& p : split(text, ',')) out.push_back(parse_int(p));
    return out;
  }
  const auto parts = split(text, ':');
  if (parts.size() == 1) return {parse_int(parts[0])};
  if (parts.size() > 3) throw InvalidArgument("range must be start:stop[:step|log]");
  const int start = parse_int(parts[0]);
  const int stop = parse_int(parts[1]);
  if (stop < start) throw InvalidArgument("range stop must be >= start");
  std::vector<int> out;
  if (parts.size() == 3 && parts[2] == "log") {
    if (start < 1) throw InvalidArgument("log range needs start >= 1");
    for (long v = start; v <= stop; v *= 2) out.push_back(static_cast<int>(v));
    return out;
  }
  const int step = parts.size() == 3 ? parse_int(parts[2]) : 1;
  if (step < 1) throw InvalidArgument("range step must be >= 1");
  for (long v = start; v <= stop; v += step) out.push_back(static_cast<int>(v));
  return out;
}

int default_workers() {
  if (const char* env = std::getenv("QINTERF_WORKERS")) {
    try {
      const int w = parse_int(env);
      if (w >= 1) return w;
    } catch (const InvalidArgument&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::string fixed5(double v) {
  if (!std::isfinite(v)) return format_number(v);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5f", v);
  return buf;
}

// Opens PATH for writing or falls back to `fallback` when PATH is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidArgument("cannot open '" + path + "' for writing");
      os_ = &file_;
    }
  }
  std::ostream& get() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

struct EnvArgs {
  int n = 4;
  int d = 2;
  int s = 1;
  std::string x = "0.1";
};

void add_env_options(CLI::App* cmd, EnvArgs& a) {
  cmd->add_option("--n", a.n, "system dimension")->capture_default_str();
  cmd->add_option("--d", a.d, "levels per environment spin")->capture_default_str();
  cmd->add_option("--s", a.s, "number of environment spins")->capture_default_str();
  cmd->add_option("--x", a.x, "inverse temperature (number or inf)")->capture_default_str();
}

BTermCoefficient parse_b_term(const std::string& s) {
  if (s == "derived") return BTermCoefficient::Derived;
  if (s == "printed") return BTermCoefficient::Printed;
  throw InvalidArgument("--b-term must be 'derived' or 'printed'");
}

// ---- mc -------------------------------------------------------------------

struct McArgs {
  EnvArgs env;
  std::size_t realizations = 100000;
  std::uint64_t seed = 1;
  int bins = 50;
  std::string bin_scale = "log";
  int workers = 1;
  std::string out, manifest, samples, format = "csv";
};

int cmd_mc(const McArgs& a, std::ostream& out) {
  EnsembleConfig cfg;
  cfg.n = a.env.n;
  cfg.d = a.env.d;
  cfg.s = a.env.s;
  cfg.x = parse_temperature(a.env.x);
  cfg.realizations = a.realizations;
  cfg.master_seed = a.seed;
  cfg.bins = a.bins;
  if (a.bin_scale != "log" && a.bin_scale != "linear") {
    throw InvalidArgument("--bin-scale must be 'log' or 'linear'");
  }
  cfg.bin_scale = a.bin_scale == "log" ? BinScale::Log : BinScale::Linear;
  cfg.workers = a.workers;
  cfg.validate();

  const auto res = run_ensemble(cfg);
  const auto manifest = run_manifest(res);
  {
    Sink sink(a.out, out);
    if (a.format == "json") {
      nlohmann::json j = {{"manifest", manifest},
                          {"stats", stats_to_json(res.stats)},
                          {"histogram", histogram_to_json(res.histogram)}};
      sink.get() << j.dump(2) << '\n';
    } else {
      write_histogram_csv(sink.get(), res);
    }
  }
  std::string manifest_path = a.manifest;
  if (manifest_path.empty() && !a.out.empty() && a.format != "json") manifest_path = a.out + ".json";
  if (!manifest_path.empty()) {
    Sink m(manifest_path, out);
    m.get() << manifest.dump(2) << '\n';
  }
  if (!a.samples.empty()) {
    Sink s(a.samples, out);
    write_samples_csv(s.get(), res);
  }
  return kExitOk;
}

// ---- moments --------------------------------------------------------------

int cmd_moments(const EnvArgs& e, const std::string& format, const std::string& b_term,
                std::ostream& out) {
  const double x = parse_temperature(e.x);
  const auto r = moment_report(e.n, e.d, e.s, x, parse_b_term(b_term));
  if (format == "json") {
    nlohmann::json j = {{"n", r.n}, {"d", r.d}, {"s", r.s}, {"x", format_number(r.x)},
                        {"mean", r.mean}, {"second_moment", r.second_moment},
                        {"variance", r.variance}, {"std_dev", r.std_dev},
                        {"b_term", b_term}, {"version", version_string()}};
    out << j.dump(2) << '\n';
  } else if (format == "table") {
    out << "n=" << r.n << " d=" << r.d << " s=" << r.s << " x=" << format_number(r.x) << '\n'
        << "mean           " << fixed5(r.mean) << '\n'
        << "second_moment  " << fixed5(r.second_moment) << '\n'
        << "variance       " << fixed5(r.variance) << '\n'
        << "std_dev        " << fixed5(r.std_dev) << '\n';
  } else {
    out << "n,d,s,x,mean,second_moment,variance,std_dev\n"
        << r.n << ',' << r.d << ',' << r.s << ',' << format_number(r.x) << ','
        << format_number(r.mean) << ',' << format_number(r.second_moment) << ','
        << format_number(r.variance) << ',' << format_number(r.std_dev) << '\n';
  }
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

double rel_err(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

int cmd_verify(const std::string& n_list, bool deep, std::ostream& out) {
  const auto ns = parse_int_range(n_list);
  for (int N : ns) {
    if (N < 1) throw InvalidArgument("--n-list entries must be >= 1");
  }
  bool ok = true;
  int passed = 0, failed = 0, refused = 0;
  auto mark = [&](bool good) {
    good ? ++passed : ++failed;
    ok = ok && good;
    return good ? "PASS" : "FAIL";
  };

  out << "# diagrams: closed form vs Weingarten oracle (tolerance 1e-12 relative)\n";
  out << std::left << std::setw(6) << "id" << std::setw(5) << "N" << std::setw(26) << "closed_form"
      << std::setw(26) << "oracle" << std::setw(12) << "rel_err" << "status\n";
  for (DiagramId id : all_diagrams()) {
    const int order = diagram_structure(id).order();
    for (int N : ns) {
      out << std::setw(6) << diagram_name(id) << std::setw(5) << N;
      if (N < order) {
        ++refused;
        out << "refused: oracle needs N >= " << order << '\n';
        continue;
      }
      const double cf = diagram_closed_form<double>(id, static_cast<double>(N));
      const double orc = diagram_value(id, N);
      const double e = rel_err(cf, orc);
      out << std::setw(26) << format_number(cf) << std::setw(26) << format_number(orc)
          << std::setw(12) << std::setprecision(3) << std::scientific << e << std::defaultfloat
          << std::setprecision(6) << mark(e < 1e-12) << '\n';
    }
  }

  out << "# Weingarten Gram solve residual (tolerance 1e-10)\n";
  for (int N : ns) {
    if (N < 4) continue;
    const auto w = weingarten(4, N);
    out << "k=4 N=" << N << " residual=" << format_number(w.residual) << ' '
        << mark(w.residual < 1e-10) << '\n';
  }

  out << "# mean: direct order-2 summation vs closed form (tolerance 1e-12 relative)\n";
  for (int n = 2; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m)
      for (double x : {0.0, 0.5, 5.0}) {
        const double b = brute_mean(n, m, x);
        const double a = mean_interference(n, m, 1, x);
        const double e = rel_err(a, b);
        out << "n=" << n << " m=" << m << " x=" << format_number(x) << " closed="
            << format_number(a) << " brute=" << format_number(b) << ' ' << mark(e < 1e-12) << '\n';
      }

  out << "# second moment: B-term coefficient arbitration at n=2, m=2, x=0\n";
  {
    const double brute = brute_second_moment(2, 2, 0.0);
    const double derived = second_moment(2, 2, 1, 0.0, BTermCoefficient::Derived);
    const double printed = second_moment(2, 2, 1, 0.0, BTermCoefficient::Printed);
    out << "brute=" << format_number(brute) << " c_B=2: " << format_number(derived) << ' '
        << mark(rel_err(derived, brute) < 1e-10) << '\n';
    out << "c_B=1: " << format_number(printed) << " rel_diff="
        << format_number(rel_err(printed, brute)) << ' ' << mark(rel_err(printed, brute) > 0.01)
        << " (expected to disagree)\n";
  }

  if (deep) {
    out << "# second moment: direct order-4 summation vs closed form (tolerance 1e-10 relative)\n";
    for (auto [n, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}})
      for (double x : {0.0, 0.5, 5.0}) {
        const double b = brute_second_moment(n, m, x);
        const double a = second_moment(n, m, 1, x);
        out << "n=" << n << " m=" << m << " x=" << format_number(x) << " closed="
            << format_number(a) << " brute=" << format_number(b) << ' '
            << mark(rel_err(a, b) < 1e-10) << '\n';
      }
  }

  out << "# summary: " << passed << " passed, " << failed << " failed, " << refused
      << " refused (N below diagram order)\n";
  return ok ? kExitOk : kExitVerifyFailed;
}

// ---- table1 ---------------------------------------------------------------

int cmd_table1(std::size_t realizations, std::uint64_t seed, int workers,
               const std::string& format, std::ostream& out) {
  if (realizations < 1) throw InvalidArgument("realizations must be >= 1");
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
  const auto rows = table1_report(realizations, seed, workers);
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"n", r.n}, {"m", r.m}, {"mc_mean", r.mc_mean}, {"mc_se", r.mc_se},
                     {"ana_mean", r.ana_mean}, {"mc_std", r.mc_std}, {"mc_std_se", r.mc_std_se},
                     {"ana_std", r.ana_std}});
    }
    nlohmann::json j = {{"master_seed", seed}, {"realizations", realizations}, {"x", 0.1},
                        {"version", version_string()}, {"rows", arr}};
    out << j.dump(2) << '\n';
  } else if (format == "table") {
    out << "# master_seed=" << seed << " realizations=" << realizations << " x=0.1\n";
    out << " n  m  mc_mean  (se)      ana_mean  mc_std   (se)      ana_std\n";
    for (const auto& r : rows) {
      out << std::right << std::setw(2) << r.n << ' ' << std::setw(2) << r.m << "  "
          << fixed5(r.mc_mean) << " (" << fixed5(r.mc_se) << ")  " << fixed5(r.ana_mean) << "   "
          << fixed5(r.mc_std) << " (" << fixed5(r.mc_std_se) << ")  " << fixed5(r.ana_std) << '\n';
    }
  } else {
    write_table1_csv(out, rows, seed, realizations);
  }
  return kExitOk;
}

// ---- grid -----------------------------------------------------------------

int cmd_grid(const std::string& x_text, const std::string& quantity, const std::string& n_range,
             const std::string& m_range, const std::string& out_path, const std::string& format,
             std::ostream& out) {
  const double x = parse_temperature(x_text);
  if (quantity != "mean" && quantity != "std") {
    throw InvalidArgument("--quantity must be 'mean' or 'std'");
  }
  const auto q = quantity == "mean" ? GridQuantity::Mean : GridQuantity::Std;
  const auto grid = moment_grid(parse_int_range(n_range), parse_int_range(m_range), x, q);
  Sink sink(out_path, out);
  if (format == "json") {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : grid) pts.push_back({{"n", p.n}, {"m", p.m}, {"value", p.value}});
    nlohmann::json j = {{"quantity", quantity == "mean" ? "ln_mean" : "ln_std"},
                        {"x", format_number(x)}, {"master_seed", nullptr},
                        {"version", version_string()}, {"points", pts}};
    sink.get() << j.dump(2) << '\n';
  } else {
    write_grid_csv(sink.get(), grid, x, q);
  }
  return kExitOk;
}

// ---- fit ------------------------------------------------------------------

int cmd_fit(const std::string& input, const std::string& format, std::ostream& out) {
  std::ifstream in(input);
  if (!in) throw InvalidArgument("cannot open '" + input + "'");
  std::string first;
  std::getline(in, first);
  in.seekg(0);
  const auto samples = read_samples_csv(in);
  const auto fit = fit_lognormal(samples);
  const std::string origin = first.rfind("# ", 0) == 0 ? first.substr(2) : "";
  if (format == "json") {
    nlohmann::json j = {{"input", input}, {"source", origin}, {"mu", fit.mu},
                        {"sigma", fit.sigma}, {"ks_distance", fit.ks_distance},
                        {"used", fit.used}, {"excluded", fit.excluded}};
    out << j.dump(2) << '\n';
  } else if (format == "table") {
    if (!origin.empty()) out << "# " << origin << '\n';
    out << "mu           " << fixed5(fit.mu) << '\n'
        << "sigma        " << fixed5(fit.sigma) << '\n'
        << "ks_distance  " << fixed5(fit.ks_distance) << '\n'
        << "used         " << fit.used << '\n'
        << "excluded     " << fit.excluded << '\n';
  } else {
    if (!origin.empty()) out << "# " << origin << '\n';
    out << "mu,sigma,ks_distance,used,excluded\n"
        << format_number(fit.mu) << ',' << format_number(fit.sigma) << ','
        << format_number(fit.ks_distance) << ',' << fit.used << ',' << fit.excluded << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interference statistics of random CP maps with a thermal spin environment",
               "qinterf"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", version_string());

  const std::vector<std::string> machine_formats{"csv", "json"};
  const std::vector<std::string> all_formats{"csv", "json", "table"};

  McArgs mc;
  mc.workers = default_workers();
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo distribution of the interference");
  add_env_options(mc_cmd, mc.env);
  mc_cmd->add_option("--realizations", mc.realizations)->capture_default_str();
  mc_cmd->add_option("--seed", mc.seed, "master seed")->capture_default_str();
  mc_cmd->add_option("--bins", mc.bins)->capture_default_str();
  mc_cmd->add_option("--bin-scale", mc.bin_scale, "log or linear")->capture_default_str();
  mc_cmd->add_option("--workers", mc.workers)->capture_default_str();
  mc_cmd->add_option("--out", mc.out, "histogram output (default stdout)");
  mc_cmd->add_option("--manifest", mc.manifest, "run manifest path (default <out>.json)");
  mc_cmd->add_option("--samples", mc.samples, "write raw samples CSV (input for fit)");
  mc_cmd->add_option("--format", mc.format)->check(CLI::IsMember(machine_formats))->capture_default_str();

  EnvArgs mom;
  std::string mom_format = "csv", b_term = "derived";
  auto* mom_cmd = app.add_subcommand("moments", "Analytic mean, second moment and variance");
  add_env_options(mom_cmd, mom);
  mom_cmd->add_option("--format", mom_format)->check(CLI::IsMember(all_formats))->capture_default_str();
  mom_cmd->add_option("--b-term", b_term, "derived (default) or printed")->capture_default_str();

  std::string n_list = "4,5,6,8";
  bool deep = false;
  auto* ver_cmd = app.add_subcommand("verify", "Check diagrams and moments against the oracle");
  ver_cmd->add_option("--n-list", n_list, "N values for the diagram table")->capture_default_str();
  ver_cmd->add_flag("--deep", deep, "include direct second-moment sums");

  std::size_t t1_real = 100000;
  std::uint64_t t1_seed = 1;
  int t1_workers = default_workers();
  std::string t1_format = "csv";
  auto* t1_cmd = app.add_subcommand("table1", "Monte Carlo vs analytic moments, five reference rows");
  t1_cmd->add_option("--realizations", t1_real)->capture_default_str();
  t1_cmd->add_option("--seed", t1_seed)->capture_default_str();
  t1_cmd->add_option("--workers", t1_workers)->capture_default_str();
  t1_cmd->add_option("--format", t1_format)->check(CLI::IsMember(all_formats))->capture_default_str();

  std::string g_x = "0.1", g_q = "mean", g_n = "2:1024:log", g_m = "2:1024:log", g_out,
              g_format = "csv";
  auto* g_cmd = app.add_subcommand("grid", "ln(mean) or ln(std) over an (n, m) grid");
  g_cmd->add_option("--x", g_x)->capture_default_str();
  g_cmd->add_option("--quantity", g_q, "mean or std")->capture_default_str();
  g_cmd->add_option("--n", g_n, "range a:b[:step|log] or list")->capture_default_str();
  g_cmd->add_option("--m", g_m, "range a:b[:step|log] or list")->capture_default_str();
  g_cmd->add_option("--out", g_out);
  g_cmd->add_option("--format", g_format)->check(CLI::IsMember(machine_formats))->capture_default_str();

  std::string f_input, f_format = "csv";
  auto* f_cmd = app.add_subcommand("fit", "Log-normal fit of sampled interference values");
  f_cmd->add_option("--input", f_input, "samples CSV written by mc --samples")->required();
  f_cmd->add_option("--format", f_format)->check(CLI::IsMember(all_formats))->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (mc_cmd->parsed()) return cmd_mc(mc, out);
    if (mom_cmd->parsed()) return cmd_moments(mom, mom_format, b_term, out);
    if (ver_cmd->parsed()) return cmd_verify(n_list, deep, out);
    if (t1_cmd->parsed()) return cmd_table1(t1_real, t1_seed, t1_workers, t1_format, out);
    if (g_cmd->parsed()) return cmd_grid(g_x, g_q, g_n, g_m, g_out, g_format, out);
    if (f_cmd->parsed()) return cmd_fit(f_input, f_format, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConsistencyError& e) {
    err << "internal consistency error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitUsage;
}

}  // namespace qinterf
