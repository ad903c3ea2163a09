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

#ifndef RISCF_CHANNEL_MODEL_HPP
#define RISCF_CHANNEL_MODEL_HPP

#include "riscf/random.hpp"
#include "riscf/spatial_correlation.hpp"

namespace riscf {

// Second-order statistics of the aggregated channel
//   o_mk = g_mk + H_m^H Phi z_k = obar_mk e^{j theta_k} + otilde_mk
// with cov(otilde_mk) = R_mk + Hbar^H Phi Rtilde_k Phi^H Hbar + Q1 + Q2.
struct AggregatedPair {
    CVec obar;     // Hbar^H Phi zbar
    CMat R_o;
    CMat cascaded; // Hbar^H Phi Rtilde_k Phi^H Hbar
    CMat Q1;       // E{Htilde^H B Htilde}, B = Phi zbar zbar^H Phi^H
    CMat Q2;       // E{Htilde^H Phi Rtilde_k Phi^H Htilde}
};

AggregatedPair aggregated_covariance(const CMat &R_mk, const CMat &Hbar, const CVec &phi, const CMat &Rtilde_k,
                                     const CMat &Rtilde_m, const CVec &zbar);

struct ChannelStatistics {
    int M = 0, K = 0, L = 0;
    ApUeTable<CVec> obar;
    ApUeTable<CMat> R_o, cascaded, Q1, Q2;
};

ChannelStatistics aggregated_covariance(const SpatialModel &model);

// One joint draw of every channel in a coherence block.
struct ChannelRealization {
    ApUeTable<CVec> g;     // direct links, L
    std::vector<CMat> H;   // RIS -> AP, N x L
    std::vector<CVec> z;   // UE -> RIS, N
    ApUeTable<CVec> o;     // aggregated, L
    RVec theta;            // UE LoS phase, rad
};

// Precomputes the covariance factors once; each draw() consumes the stream
// in a fixed order (theta, g, Htilde, ztilde).
class ChannelSampler {
  public:
    explicit ChannelSampler(const SpatialModel &model);

    ChannelRealization draw(RandomStream &rng) const;

    // Draw with every theta_k pinned (conditional experiments).
    ChannelRealization draw(RandomStream &rng, const RVec &theta) const;

  private:
    const SpatialModel *model_;
    ApUeTable<CMat> g_factor_;
    std::vector<CMat> h_factor_;
    std::vector<CMat> z_factor_;
};

// o_mk = g_mk + H_m^H Phi z_k.
CVec assemble_aggregated(const CVec &g, const CMat &H, const CVec &phi, const CVec &z);

} // namespace riscf

#endif
