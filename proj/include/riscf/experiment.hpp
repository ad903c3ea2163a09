// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RISCF_EXPERIMENT_HPP
#define RISCF_EXPERIMENT_HPP

#include "riscf/pipeline.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace riscf {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char *kToolVersion = "0.1.0";

struct Mode {
    Combiner combiner = Combiner::lsfd;
    bool emi = true;
    PowerMethod power = PowerMethod::full;
    bool ris = true;
};

// One point of a parameter sweep. `x` carries the scalar (M, K, L, N,
// rho_db, d_H_fraction); ris_position uses (x, y).
struct SweepValue {
    double x = 0.0;
    double y = 0.0;
    std::string label;
};

struct ExperimentSpec {
    SystemConfig base;
    std::string sweep_param = "none"; // none | M | K | L | N | rho_db | d_H_fraction | ris_position
    std::vector<SweepValue> sweep_values;
    int n_scenarios = 1;
    std::vector<Mode> modes;
    long mc_trials = 0; // 0: closed form only
    long mc_chunk = 256;
    bool record_runtime = false; // runtime_ms column; off keeps the CSV byte-stable
    MaxMinOptions maxmin;
};

// Parses the YAML experiment file. Unknown keys anywhere are rejected
// with Error("invalid_config").
ExperimentSpec parse_experiment(const std::string &yaml_text);
ExperimentSpec load_experiment(const std::string &path);

// Applies one sweep value to a copy of the base configuration.
SystemConfig apply_sweep(const SystemConfig &base, const std::string &param, const SweepValue &v);

struct Record {
    std::size_t sweep_index = 0;
    int scenario = 0;
    std::size_t mode_index = 0;
    int ue = 0;
    double sinr_closed = 0.0, se_closed = 0.0;
    std::optional<double> sinr_mc, se_mc;
    double runtime_ms = 0.0;
    double power = 0.0; // W
};

struct ExperimentResult {
    std::vector<Record> records; // sorted by (sweep, scenario, mode, ue)
    std::vector<std::string> warnings;
    double wall_ms = 0.0;
    int maxmin_iterations = 0;
};

ExperimentResult run_experiment(const ExperimentSpec &spec, std::uint64_t seed, int threads);

std::string format_csv(const ExperimentSpec &spec, const ExperimentResult &result);

struct CdfTable {
    std::vector<double> values;    // ascending
    std::vector<double> ordinates; // (i + 1) / n
    double q05 = 0.0;              // order statistic at ceil(0.05 n)
};

CdfTable emit_cdf(std::vector<double> samples);

// Reads a results CSV, groups rows by (sweep, mode) and writes the CDF of
// se_closed (and se_mc when present).
void cdf_from_csv(const std::string &in_path, const std::string &out_path);

// Writes results.csv, manifest.json and cdf.csv into `dir`.
void write_outputs(const std::string &dir, const ExperimentSpec &spec, const ExperimentResult &result,
                   const std::string &config_text, std::uint64_t seed, int threads);

std::uint64_t fnv1a64(const std::string &bytes);

// Shortest round-trip decimal form ("inf" / "-inf" / "nan" for specials).
std::string format_double(double v);

} // namespace riscf

#endif
