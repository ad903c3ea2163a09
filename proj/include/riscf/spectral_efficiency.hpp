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

#ifndef RISCF_SPECTRAL_EFFICIENCY_HPP
#define RISCF_SPECTRAL_EFFICIENCY_HPP

#include "riscf/channel_estimation.hpp"

namespace riscf {

// Closed-form ingredients of the LSFD SINR. Per-UE diagonals are stored
// column-wise (entry (m, k)); pairwise ones as one M x K matrix per k with
// entry (m, i).
//
//   z_mk        = phat_k tau_p tr(Omega_mk) + |obar_mk|^2
//   xi_{m,ki}   = phat_k tau_p tr(R^o_mi Omega_mk) + obar_mk^H R^o_mi obar_mk
//                 + phat_k tau_p obar_mi^H Omega_mk obar_mi + |obar_mk^H obar_mi|^2
//   varpi_{m,ki} = tr(R^o_mi Psi_mk^{-1} R^o_mk)   (complex when L > 1)
//   J_mk        = |obar_mk|^2
//   w_mk        = obar_mk^H R_mm obar_mk + phat_k tau_p tr(R_mm Omega_mk)
struct SinrTerms {
    int M = 0, K = 0;
    PilotAssignment pilots;
    std::vector<double> pilot_power;
    RMat z, J, w;
    std::vector<RMat> xi;
    std::vector<CMat> varpi;

    double tau_p() const noexcept { return pilots.tau_p; }
};

SinrTerms build_sinr_terms(const ChannelStatistics &chan, const EstimationStatistics &est,
                           const EmiNoiseCovariance &emi, const PilotAssignment &pilots,
                           const std::vector<double> &pilot_power);

// Gamma_ki = phat_k phat_i tau_p^2 |tr(A_k^H Delta_ki)|^2 for weights a.
double coherent_interference(const SinrTerms &t, const CVec &a, int k, int i);

// LSFD SINR with arbitrary weights (one M-vector per UE).
RVec sinr_lsfd_closed_form(const SinrTerms &t, const std::vector<CVec> &a, const RVec &p, double noise_power);

// Same expression with W_k dropped (the EMI-free closed form).
RVec sinr_lsfd_without_emi(const SinrTerms &t, const std::vector<CVec> &a, const RVec &p, double noise_power);

// Simple centralized decoding (all-ones weights), written out with plain sums.
RVec sinr_equal_weights(const SinrTerms &t, const RVec &p, double noise_power);

std::vector<CVec> equal_weights(int M, int K);

// Expectations of the use-and-then-forget SINR for one UE k:
//   Eu = E{u_kk}, T[i] = E{u_ki u_ki^H}, D = diag E{|v_mk|^2},
//   U = E{e e^H} with e_m = v_mk^H H_m^H Phi n (diagonal by convention).
struct UatfMatrices {
    CVec Eu;
    std::vector<CMat> T;
    RVec D;
    CMat U;
};

UatfMatrices closed_form_uatf(const SinrTerms &t, int k);

// sum_i p_i T_ki - p_k Eu Eu^H + sigma^2 D + U
CMat uatf_interference_matrix(const UatfMatrices &u, const RVec &p, int k, double noise_power);

// p_k |a^H Eu|^2 / a^H (...) a
double sinr_uatf(const UatfMatrices &u, const CVec &a, const RVec &p, int k, double noise_power);

CVec optimal_lsfd_weights(const UatfMatrices &u, const RVec &p, int k, double noise_power);

// p_k Eu^H (...)^{-1} Eu
double optimal_sinr(const UatfMatrices &u, const RVec &p, int k, double noise_power);

std::vector<CVec> optimal_lsfd_weights(const SinrTerms &t, const RVec &p, double noise_power);

struct SeResult {
    RVec sinr;
    RVec se; // bit/s/Hz
    double prelog = 0.0;
};

SeResult spectral_efficiency(const RVec &sinr, int tau_u, int tau_c);

} // namespace riscf

#endif
