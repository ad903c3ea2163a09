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

#ifndef RISCF_CHANNEL_ESTIMATION_HPP
#define RISCF_CHANNEL_ESTIMATION_HPP

#include "riscf/channel_model.hpp"
#include "riscf/emi_model.hpp"

namespace riscf {

// Round-robin pilot reuse: UE k sends pilot k mod tau_p.
struct PilotAssignment {
    int tau_p = 1;
    std::vector<int> pilot;               // per UE
    std::vector<std::vector<int>> coset;  // P_k, ascending, includes k

    bool shares(int k, int i) const { return pilot.at(k) == pilot.at(i); }
};

PilotAssignment assign_pilots(int K, int tau_p);

// Orthogonal pilot book, tau_p x tau_p, column t is pilot t with
// phi_t^H phi_t = tau_p (unit-modulus DFT entries).
CMat pilot_book(int tau_p);

// MMSE statistics per (m, k):
//   Psi   = sum_{i in P_k} phat_i tau_p R^o_mi + R_mm + sigma^2 I
//   Omega = R^o Psi^{-1} R^o,  C = R^o - phat_k tau_p Omega
// plus PsiInvR = Psi^{-1} R^o, the piece reused by the estimator and the
// coherent-interference traces.
struct EstimationStatistics {
    ApUeTable<CMat> Psi, Omega, C, PsiInvR;
};

EstimationStatistics estimation_statistics(const ChannelStatistics &chan, const EmiNoiseCovariance &emi,
                                           const PilotAssignment &pilots, const std::vector<double> &pilot_power,
                                           double noise_power);

// Received pilot block at each AP (L x tau_p):
//   Y_m = sum_k sqrt(phat_k) o_mk phi_k^T + H_m^H Phi N + N_m
struct PilotObservation {
    std::vector<CMat> Y;    // per AP
    ApUeTable<CVec> y;      // Y_m phi_k^*, per (m, k)
};

// `emi` is N x tau_p (may be empty when the RIS carries no EMI), `noise`
// one L x tau_p block per AP.
PilotObservation synthesize_pilot_observation(const ChannelRealization &chan, const CVec &phi, const CMat &emi,
                                              const std::vector<CMat> &noise, const PilotAssignment &pilots,
                                              const std::vector<double> &pilot_power);

// ybar_mk = sum_{i in P_k} sqrt(phat_i) tau_p obar_mi e^{j theta_i}
CVec pilot_mean(const ChannelStatistics &chan, int m, int k, const RVec &theta, const PilotAssignment &pilots,
                const std::vector<double> &pilot_power);

// ohat_mk = obar_mk e^{j theta_k} + sqrt(phat_k) R^o Psi^{-1} (y - ybar)
CVec mmse_estimate(const CVec &y, const ChannelStatistics &chan, const EstimationStatistics &est, int m, int k,
                   const RVec &theta, const PilotAssignment &pilots, const std::vector<double> &pilot_power);

} // namespace riscf

#endif
