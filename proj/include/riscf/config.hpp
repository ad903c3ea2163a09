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

#ifndef RISCF_CONFIG_HPP
#define RISCF_CONFIG_HPP

#include "riscf/types.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace riscf {

double dbm_to_watt(double dbm);
double db_to_linear(double db);

// How the RIS-to-UE LoS direction vector is built.
enum class ZbarModel {
    planar, // planar-array response toward the UE
    ones,   // all-ones direction (debugging)
};

// Every dimensional and radio parameter of one simulated system.
struct SystemConfig {
    int M = 10;     // APs
    int K = 5;      // UEs
    int L = 1;      // antennas per AP
    int N_H = 4;    // RIS elements per row
    int N_V = 4;    // RIS elements per column
    int tau_c = 200;
    int tau_p = 3;

    double carrier_frequency = 1.9e9; // Hz
    double d_H = 0.5;                 // RIS element width, fraction of wavelength
    double d_V = 0.5;                 // RIS element height, fraction of wavelength
    double ap_antenna_spacing = 0.5;  // AP ULA spacing, fraction of wavelength

    double p_max = 0.2;               // W (23 dBm)
    std::vector<double> pilot_power;  // W per UE; empty means p_max for all
    double noise_power = 3.981071705534972e-13; // W (-94 dBm)
    double rho_db = 20.0;             // signal-to-EMI ratio
    bool emi_enabled = true;

    double area_side = 100.0; // m
    double ap_height = 15.0;
    double ue_height = 1.65;
    double ris_height = 30.0;
    std::optional<std::pair<double, double>> ris_xy; // default: area center

    double asd_deg = 15.0;
    double alpha_fpc = 0.6;

    double shadow_delta_f = 0.5;
    double shadow_sigma_db = 8.0;
    double decorrelation_distance = 100.0; // m

    bool ue_ris_rician_law = true; // kappa_k = 10^(1.3 - 0.003 d_k); false: pure LoS-free (kappa_k = 0)
    ZbarModel zbar_model = ZbarModel::planar;
    double ris_phase = kPi / 4.0; // common phase of every RIS element
    bool ris_enabled = true;

    std::uint64_t seed = 1;

    int N() const noexcept { return N_H * N_V; }
    int tau_u() const noexcept { return tau_c - tau_p; }
    double wavelength() const noexcept { return kSpeedOfLight / carrier_frequency; }
    double element_width() const noexcept { return d_H * wavelength(); }  // m
    double element_height() const noexcept { return d_V * wavelength(); } // m
    double element_area() const noexcept { return element_width() * element_height(); }
    double pilot_power_of(int k) const;
    double rho_linear() const noexcept { return db_to_linear(rho_db); }
    bool emi_active() const noexcept;

    // Throws riscf::Error("invalid_config", ...) on any violated invariant.
    void validate() const;
};

} // namespace riscf

#endif
