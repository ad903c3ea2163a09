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

#include "riscf/pipeline.hpp"

namespace riscf {

OracleInputs Snapshot::oracle_inputs() const {
    OracleInputs in;
    in.model = &model;
    in.chan = &chan;
    in.est = &est;
    in.pilots = &pilots;
    in.pilot_power = pilot_power;
    in.sigma_r2 = sigma_r2;
    in.noise_power = config.noise_power;
    return in;
}

Snapshot make_snapshot(const SystemConfig &config, const Scenario &scenario) {
    const double s = config.emi_active() ? sigma_r2_from_rho(config.rho_db, config.p_max, scenario.beta_m) : 0.0;
    return make_snapshot(config, scenario, s);
}

Snapshot make_snapshot(const SystemConfig &config, const Scenario &scenario, double sigma_r2) {
    config.validate();
    Snapshot s;
    s.config = config;
    s.scenario = scenario;
    s.model = build_spatial_model(config, scenario);
    s.chan = aggregated_covariance(s.model);
    s.sigma_r2 = config.ris_enabled ? sigma_r2 : 0.0;
    s.emi = emi_noise_covariance(s.model, s.sigma_r2);
    s.pilots = assign_pilots(config.K, config.tau_p);
    s.pilot_power.resize(config.K);
    for (int k = 0; k < config.K; ++k) {
        s.pilot_power[k] = config.pilot_power_of(k);
    }
    s.est = estimation_statistics(s.chan, s.emi, s.pilots, s.pilot_power, config.noise_power);
    s.terms = build_sinr_terms(s.chan, s.est, s.emi, s.pilots, s.pilot_power);
    return s;
}

const char *to_string(Combiner c) { return c == Combiner::mr ? "MR" : "LSFD"; }

Combiner combiner_from_string(const std::string &s) {
    if (s == "MR" || s == "mr") {
        return Combiner::mr;
    }
    if (s == "LSFD" || s == "lsfd") {
        return Combiner::lsfd;
    }
    throw Error("invalid_config", "unknown combiner '" + s + "'");
}

ModeResult evaluate_mode(const Snapshot &snap, Combiner combiner, PowerMethod power, const MaxMinOptions &opt) {
    const SystemConfig &c = snap.config;
    const SinrTerms &t = snap.terms;
    ModeResult out;
    switch (power) {
    case PowerMethod::full:
        out.power = full_power(c.K, c.p_max);
        break;
    case PowerMethod::fpc:
        out.power = fractional_power_control(trace_sums(snap.chan), c.alpha_fpc, c.p_max);
        break;
    case PowerMethod::maxmin:
        if (combiner == Combiner::mr) {
            const std::vector<CVec> ones = equal_weights(c.M, c.K);
            out.power = maxmin_power_control(t, c.p_max, c.noise_power, opt, &ones);
        } else {
            out.power = maxmin_power_control(t, c.p_max, c.noise_power, opt);
        }
        break;
    }
    if (power == PowerMethod::maxmin) {
        out.weights = out.power.weights;
    } else if (combiner == Combiner::mr) {
        out.weights = equal_weights(c.M, c.K);
    } else {
        out.weights = optimal_lsfd_weights(t, out.power.p, c.noise_power);
    }
    out.sinr = sinr_lsfd_closed_form(t, out.weights, out.power.p, c.noise_power);
    return out;
}

} // namespace riscf
