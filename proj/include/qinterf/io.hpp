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

#ifndef QINTERF_IO_HPP
#define QINTERF_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qinterf/ensemble_runner.hpp"

namespace qinterf {

// Build identifier (git describe of the source tree).
std::string version_string();

// %.17g, with "inf"/"-inf"/"nan" spelled out.
std::string format_number(double v);

nlohmann::json config_to_json(const EnsembleConfig& c);
nlohmann::json stats_to_json(const RunningStats& s);
nlohmann::json histogram_to_json(const Histogram& h);
// Config, seed, version and timing: enough to rerun exactly.
nlohmann::json run_manifest(const EnsembleResult& r);

// Every CSV starts with one "# key=value ..." line carrying the master seed.
void write_histogram_csv(std::ostream& os, const EnsembleResult& r);
void write_samples_csv(std::ostream& os, const EnsembleResult& r);
void write_grid_csv(std::ostream& os, const std::vector<GridPoint>& grid, double x,
                    GridQuantity q);
void write_table1_csv(std::ostream& os, const std::vector<Table1Row>& rows,
                      std::uint64_t master_seed, std::size_t realizations);

// Reads the interference column of a samples CSV (or a bare one-column
// file). Lines starting with '#' and a non-numeric header are skipped.
std::vector<double> read_samples_csv(std::istream& is);

}  // namespace qinterf

#endif  // QINTERF_IO_HPP
