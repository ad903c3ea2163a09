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

// Command-line driver.
//
//   riscf run --config <path> --seed <u64> --out <dir> [--mc-trials N] [--threads N]
//   riscf cdf --in <csv> --out <csv>
//
// Failures print one JSON object on stderr and exit nonzero.

#include "riscf/experiment.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int fail(const std::string &code, const std::string &message, int status) {
    nlohmann::ordered_json j;
    j["error"] = code;
    j["message"] = message;
    std::cerr << j.dump() << std::endl;
    return status;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"RIS-aided cell-free massive MIMO uplink simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    long mc_trials = -1;
    int threads = 1;
    auto *run = app.add_subcommand("run", "run an experiment file");
    run->add_option("--config", config_path, "experiment YAML")->required();
    run->add_option("--seed", seed, "master seed")->required();
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--mc-trials", mc_trials, "Monte-Carlo trials (overrides the file)")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    std::string cdf_in, cdf_out;
    auto *cdf = app.add_subcommand("cdf", "empirical CDFs from a results CSV");
    cdf->add_option("--in", cdf_in, "results CSV")->required();
    cdf->add_option("--out", cdf_out, "output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return fail("usage", e.what(), 2);
    }

    try {
        if (*run) {
            std::ifstream in(config_path, std::ios::binary);
            if (!in) {
                return fail("io", "cannot read config file '" + config_path + "'", 1);
            }
            std::stringstream ss;
            ss << in.rdbuf();
            const std::string text = ss.str();
            riscf::ExperimentSpec spec = riscf::parse_experiment(text);
            if (mc_trials >= 0) {
                spec.mc_trials = mc_trials;
            }
            const riscf::ExperimentResult res = riscf::run_experiment(spec, seed, threads);
            riscf::write_outputs(out_dir, spec, res, text, seed, threads);
            std::cout << "wrote " << res.records.size() << " records to " << out_dir << "\n";
            if (!res.warnings.empty()) {
                std::cout << res.warnings.size() << " closed-form/oracle warnings (see manifest.json)\n";
            }
        } else if (*cdf) {
            riscf::cdf_from_csv(cdf_in, cdf_out);
        }
    } catch (const riscf::Error &e) {
        return fail(e.code(), e.what(), 1);
    } catch (const std::exception &e) {
        return fail("internal", e.what(), 1);
    }
    return 0;
}
