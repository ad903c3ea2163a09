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

#ifndef RISCF_PIPELINE_HPP
#define RISCF_PIPELINE_HPP

#include "riscf/monte_carlo.hpp"
#include "riscf/power_control.hpp"

namespace riscf {

// All statistics of one (config, scenario) pair, from geometry down to the
// closed-form SINR ingredients. Holds the spatial model by value; anything
// that keeps pointers into it (ChannelSampler, OracleInputs) must not
// outlive the snapshot or survive a move of it.
struct Snapshot {
    SystemConfig config;
    Scenario scenario;
    SpatialModel model;
    ChannelStatistics chan;
    double sigma_r2 = 0.0;
    EmiNoiseCovariance emi;
    PilotAssignment pilots;
    std::vector<double> pilot_power;
    EstimationStatistics est;
    SinrTerms terms;

    OracleInputs oracle_inputs() const;
};

// EMI power follows config.emi_active(): off, RIS off or rho = inf give 0.
Snapshot make_snapshot(const SystemConfig &config, const Scenario &scenario);

// Override sigma_r^2 directly (rho ignored).
Snapshot make_snapshot(const SystemConfig &config, const Scenario &scenario, double sigma_r2);

enum class Combiner { mr, lsfd };

const char *to_string(Combiner c);
Combiner combiner_from_string(const std::string &s);

// Closed-form evaluation of one (combiner, power) mode.
//   mr:   all-ones second-layer weights (simple centralized decoding)
//   lsfd: optimal weights at the chosen powers; for maxmin, the full-power
//         optimum held fixed through the bisection
struct ModeResult {
    PowerAllocation power;
    std::vector<CVec> weights;
    RVec sinr;
};

ModeResult evaluate_mode(const Snapshot &snap, Combiner combiner, PowerMethod power, const MaxMinOptions &opt = {});

} // namespace riscf

#endif
