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

#ifndef RISCF_SPATIAL_CORRELATION_HPP
#define RISCF_SPATIAL_CORRELATION_HPP

#include "riscf/config.hpp"
#include "riscf/scenario.hpp"

#include <vector>

namespace riscf {

// Isotropic-scattering correlation of a planar RIS.
//
// Element x sits at [0, mod(x, N_H) * w, floor(x / N_H) * h] (0-based x)
// and R(i, j) = sinc(2 |u_i - u_j| / lambda), sinc(y) = sin(pi y) / (pi y).
struct RisCorrelation {
    RMat R;
    std::vector<Point3> element_positions; // m
    double area = 0.0;                     // element area w * h, m^2
};

// `width` and `height` are the element dimensions in metres.
RisCorrelation ris_sinc_correlation(int n_h, int n_v, double width, double height, double wavelength);

double sinc(double y);

// Gaussian local scattering correlation of an L-antenna ULA:
//
//   [R]_{l,n} = beta * E_delta{ exp(j 2 pi s (l - n) sin(theta + delta)) },
//   delta ~ N(0, sigma^2),
//
// evaluated with Gauss-Hermite quadrature whose order starts at 30 and is
// doubled until successive results agree to 1e-9 (relative, max-norm).
// `spacing` is the antenna spacing in wavelengths.
CMat gaussian_local_scattering(double beta, double theta, double sigma, int antennas, double spacing);

// Gauss-Hermite nodes/weights for the weight exp(-x^2) (Golub-Welsch).
void gauss_hermite(int order, RVec &nodes, RVec &weights);

// Deterministic line-of-sight parts of the RIS links.
struct LosComponents {
    std::vector<CMat> Hbar; // N x L per AP
    std::vector<CVec> zbar; // N per UE
    CVec phi;               // diagonal of the RIS phase-shift matrix
    RVec theta_m;           // AP -> RIS azimuth, rad
    RVec beta_m_los, beta_m_nlos;
    RVec beta_k_los, beta_k_nlos;

    CMat phi_matrix() const { return phi.asDiagonal(); }
};

LosComponents los_components(const Scenario &scenario, const SystemConfig &config);

// NLoS covariances of the RIS links.
//   Rtilde_m = (R_m^T kron R_r) / (L N beta_m), R_r = beta_m^NLoS A_r R,
//   Rtilde_k = beta_k^NLoS A_r R.
// R_m is the AP-side Gaussian-local-scattering correlation toward the RIS
// with tr(R_m) = L.
struct NlosCovariances {
    std::vector<CMat> R_m;      // L x L per AP
    std::vector<CMat> Rtilde_m; // N L x N L per AP
    std::vector<CMat> Rtilde_k; // N x N per UE
};

NlosCovariances nlos_covariances(const RisCorrelation &ris, const Scenario &scenario, const LosComponents &los,
                                 const SystemConfig &config);

// Kronecker product A kron B.
CMat kronecker(const CMat &a, const CMat &b);

// Everything second-order the channel model needs for one scenario.
struct SpatialModel {
    int M = 0, K = 0, L = 0, N = 0;
    RisCorrelation ris;
    ApUeTable<CMat> R_mk; // direct-link correlation, L x L
    RMat theta_mk;        // AP -> UE azimuth, rad
    LosComponents los;
    NlosCovariances nlos;
    bool ris_enabled = true;
};

SpatialModel build_spatial_model(const SystemConfig &config, const Scenario &scenario);

// Zeroes every cascaded quantity (Hbar, zbar, Rtilde_m, Rtilde_k) so that the
// aggregated channel reduces to the direct link.
void disable_ris(SpatialModel &model);

} // namespace riscf

#endif
