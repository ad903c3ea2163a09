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

#include "riscf/config.hpp"

#include <cmath>
#include <sstream>

namespace riscf {

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double SystemConfig::pilot_power_of(int k) const {
    if (pilot_power.empty()) {
        return p_max;
    }
    return pilot_power.at(static_cast<std::size_t>(k));
}

bool SystemConfig::emi_active() const noexcept { return emi_enabled && ris_enabled && std::isfinite(rho_db); }

namespace {

[[noreturn]] void reject(const std::string &msg) { throw Error("invalid_config", msg); }

} // namespace

void SystemConfig::validate() const {
    if (M < 1 || K < 1 || L < 1 || N_H < 1 || N_V < 1) {
        reject("M, K, L, N_H and N_V must all be >= 1");
    }
    if (tau_p < 1 || tau_c < 1 || tau_p > tau_c) {
        reject("need 1 <= tau_p <= tau_c");
    }
    if (!(carrier_frequency > 0.0) || !(d_H > 0.0) || !(d_V > 0.0) || !(ap_antenna_spacing > 0.0)) {
        reject("carrier frequency and all spacings must be positive");
    }
    if (!(p_max > 0.0) || !(noise_power > 0.0)) {
        reject("p_max and noise_power must be positive");
    }
    if (!pilot_power.empty()) {
        if (pilot_power.size() != static_cast<std::size_t>(K)) {
            reject("pilot_power must have exactly K entries");
        }
        for (double p : pilot_power) {
            if (!(p > 0.0)) {
                reject("pilot powers must be positive");
            }
        }
    }
    if (std::isnan(rho_db)) {
        reject("rho_db must be a number (use inf for no EMI)");
    }
    if (!(area_side > 0.0) || !(ap_height >= 0.0) || !(ue_height >= 0.0) || !(ris_height >= 0.0)) {
        reject("area and heights must be non-negative (area positive)");
    }
    if (ris_xy) {
        const auto [x, y] = *ris_xy;
        if (x < 0.0 || x > area_side || y < 0.0 || y > area_side) {
            reject("RIS position must lie inside the area");
        }
    }
    if (!(asd_deg > 0.0)) {
        reject("angular standard deviation must be positive");
    }
    if (!(alpha_fpc >= 0.0 && alpha_fpc < 1.0)) {
        reject("FPC exponent must satisfy 0 <= alpha < 1");
    }
    if (!(shadow_delta_f >= 0.0 && shadow_delta_f <= 1.0) || !(shadow_sigma_db >= 0.0) ||
        !(decorrelation_distance > 0.0)) {
        reject("shadow fading parameters out of range");
    }
}

} // namespace riscf
