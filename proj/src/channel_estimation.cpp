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

#include "riscf/channel_estimation.hpp"

#include "riscf/linalg.hpp"

#include <cmath>

namespace riscf {

PilotAssignment assign_pilots(int K, int tau_p) {
    if (K < 1 || tau_p < 1) {
        throw Error("invalid_argument", "assign_pilots: K and tau_p must be >= 1");
    }
    PilotAssignment a;
    a.tau_p = tau_p;
    a.pilot.resize(K);
    a.coset.resize(K);
    for (int k = 0; k < K; ++k) {
        a.pilot[k] = k % tau_p;
    }
    for (int k = 0; k < K; ++k) {
        for (int i = 0; i < K; ++i) {
            if (a.pilot[i] == a.pilot[k]) {
                a.coset[k].push_back(i);
            }
        }
    }
    return a;
}

CMat pilot_book(int tau_p) {
    CMat p(tau_p, tau_p);
    for (int t = 0; t < tau_p; ++t) {
        for (int c = 0; c < tau_p; ++c) {
            p(t, c) = std::exp(-2.0 * kPi * kJ * static_cast<double>(t * c) / static_cast<double>(tau_p));
        }
    }
    return p;
}

EstimationStatistics estimation_statistics(const ChannelStatistics &chan, const EmiNoiseCovariance &emi,
                                           const PilotAssignment &pilots, const std::vector<double> &pilot_power,
                                           double noise_power) {
    const int M = chan.M, K = chan.K, L = chan.L;
    if (static_cast<int>(pilot_power.size()) != K || static_cast<int>(emi.R_mm.size()) != M ||
        static_cast<int>(pilots.pilot.size()) != K) {
        throw Error("dimension", "estimation_statistics: inconsistent dimensions");
    }
    const double tp = pilots.tau_p;
    EstimationStatistics est;
    est.Psi = ApUeTable<CMat>(M, K);
    est.Omega = ApUeTable<CMat>(M, K);
    est.C = ApUeTable<CMat>(M, K);
    est.PsiInvR = ApUeTable<CMat>(M, K);
    for (int m = 0; m < M; ++m) {
        for (int k = 0; k < K; ++k) {
            CMat psi = emi.R_mm[m] + noise_power * CMat::Identity(L, L);
            for (int i : pilots.coset[k]) {
                psi += pilot_power[i] * tp * chan.R_o(m, i);
            }
            psi = linalg::hermitian_part(psi);
            const CMat &Ro = chan.R_o(m, k);
            CMat x = linalg::hpd_solve(psi, Ro, 1e12, "Psi");
            CMat omega = linalg::hermitian_part(Ro * x);
            est.C(m, k) = linalg::hermitian_part(Ro - pilot_power[k] * tp * omega);
            est.Omega(m, k) = std::move(omega);
            est.PsiInvR(m, k) = std::move(x);
            est.Psi(m, k) = std::move(psi);
        }
    }
    return est;
}

PilotObservation synthesize_pilot_observation(const ChannelRealization &chan, const CVec &phi, const CMat &emi,
                                              const std::vector<CMat> &noise, const PilotAssignment &pilots,
                                              const std::vector<double> &pilot_power) {
    const int M = static_cast<int>(chan.H.size());
    const int K = static_cast<int>(pilots.pilot.size());
    const int tp = pilots.tau_p;
    const CMat book = pilot_book(tp);
    PilotObservation obs;
    obs.Y.reserve(M);
    obs.y = ApUeTable<CVec>(M, K);
    for (int m = 0; m < M; ++m) {
        const Eigen::Index L = chan.H[m].cols();
        CMat Y = noise.at(m);
        if (Y.rows() != L || Y.cols() != tp) {
            throw Error("dimension", "synthesize_pilot_observation: noise block must be L x tau_p");
        }
        for (int k = 0; k < K; ++k) {
            Y += std::sqrt(pilot_power[k]) * chan.o(m, k) * book.col(pilots.pilot[k]).transpose();
        }
        if (emi.size() > 0) {
            Y += chan.H[m].adjoint() * phi.asDiagonal() * emi;
        }
        for (int k = 0; k < K; ++k) {
            obs.y(m, k) = Y * book.col(pilots.pilot[k]).conjugate();
        }
        obs.Y.push_back(std::move(Y));
    }
    return obs;
}

CVec pilot_mean(const ChannelStatistics &chan, int m, int k, const RVec &theta, const PilotAssignment &pilots,
                const std::vector<double> &pilot_power) {
    CVec ybar = CVec::Zero(chan.L);
    for (int i : pilots.coset[k]) {
        ybar += std::sqrt(pilot_power[i]) * pilots.tau_p * std::exp(kJ * theta(i)) * chan.obar(m, i);
    }
    return ybar;
}

CVec mmse_estimate(const CVec &y, const ChannelStatistics &chan, const EstimationStatistics &est, int m, int k,
                   const RVec &theta, const PilotAssignment &pilots, const std::vector<double> &pilot_power) {
    const CVec innov = y - pilot_mean(chan, m, k, theta, pilots, pilot_power);
    // R^o Psi^{-1} = (Psi^{-1} R^o)^H
    return std::exp(kJ * theta(k)) * chan.obar(m, k) +
           std::sqrt(pilot_power[k]) * (est.PsiInvR(m, k).adjoint() * innov);
}

} // namespace riscf
