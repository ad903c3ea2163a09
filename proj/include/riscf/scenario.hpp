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

#ifndef RISCF_SCENARIO_HPP
#define RISCF_SCENARIO_HPP

#include "riscf/config.hpp"
#include "riscf/random.hpp"

#include <Eigen/Dense>
#include <vector>

namespace riscf {

using Point3 = Eigen::Vector3d;

// Node placement and large-scale fading of one random drop.
//
// Distances are 3-D; the horizontal component uses the wrap-around
// (torus) metric of the square area. Large-scale gains are linear.
struct Scenario {
    std::vector<Point3> ap_positions;
    std::vector<Point3> ue_positions;
    Point3 ris_position = Point3::Zero();

    RVec d_m;  // AP-RIS, m
    RVec d_k;  // UE-RIS, m
    RMat d_mk; // AP-UE, m (M x K)

    RVec beta_m;  // AP-RIS
    RVec beta_k;  // UE-RIS
    RMat beta_mk; // AP-UE (M x K)

    RVec kappa_m; // AP-RIS Rician factor
    RVec kappa_k; // UE-RIS Rician factor

    RVec shadow_m;  // dB
    RVec shadow_k;  // dB
    RMat shadow_mk; // dB

    int aps() const { return static_cast<int>(ap_positions.size()); }
    int ues() const { return static_cast<int>(ue_positions.size()); }
};

// Minimum-image horizontal displacement b - a on the torus of the given
// side (z component is the plain height difference).
Point3 wrapped_displacement(const Point3 &a, const Point3 &b, double side);

// 3-D distance using the wrapped horizontal displacement.
double wrapped_distance(const Point3 &a, const Point3 &b, double side);

// COST 321 Walfish-Ikegami path loss (without shadowing), dB.
double path_loss_db(double distance_m);

// Rician factor 10^(1.3 - 0.003 d), linear.
double rician_factor(double distance_m);

// Zero-mean Gaussian vector with covariance sigma^2 * 2^(-d_ij / d_dc),
// d_ij the wrapped horizontal distance between positions. On the torus this
// kernel can be indefinite; it is then replaced by the nearest PSD matrix
// with the same diagonal before factorization.
RVec correlated_gaussian_field(const std::vector<Point3> &positions, double side, double sigma,
                               double decorrelation_distance, RandomStream &rng);

// Node-level shadowing terms and the per-link combination
// F = sqrt(delta_f) * a + sqrt(1 - delta_f) * b.
struct ShadowFading {
    RVec ap_field;  // a_m, correlated across APs
    RVec ue_field;  // b_k, correlated across UEs
    double ris_term = 0.0; // b_RIS

    RVec f_m;  // AP-RIS link
    RVec f_k;  // UE-RIS link
    RMat f_mk; // AP-UE link
};

ShadowFading correlated_shadow_fading(const std::vector<Point3> &aps, const std::vector<Point3> &ues,
                                      double side, double delta_f, double sigma_db,
                                      double decorrelation_distance, RandomStream &rng);

Scenario generate_scenario(const SystemConfig &config, RandomStream &rng);

} // namespace riscf

#endif
