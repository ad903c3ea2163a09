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

#include "riscf/channel_model.hpp"

#include "riscf/linalg.hpp"

#include <cmath>

namespace riscf {

AggregatedPair aggregated_covariance(const CMat &R_mk, const CMat &Hbar, const CVec &phi, const CMat &Rtilde_k,
                                     const CMat &Rtilde_m, const CVec &zbar) {
    const Eigen::Index N = Hbar.rows();
    const Eigen::Index L = Hbar.cols();
    if (R_mk.rows() != L || R_mk.cols() != L || phi.size() != N || zbar.size() != N || Rtilde_k.rows() != N ||
        Rtilde_k.cols() != N || Rtilde_m.rows() != N * L || Rtilde_m.cols() != N * L) {
        throw Error("dimension", "aggregated_covariance: inconsistent dimensions");
    }
    AggregatedPair out;
    const CVec phz = phi.cwiseProduct(zbar);
    out.obar = Hbar.adjoint() * phz;

    // Phi Rtilde_k Phi^H, elementwise since Phi is diagonal
    const CMat prp = phi.asDiagonal() * Rtilde_k * phi.conjugate().asDiagonal();
    out.cascaded = Hbar.adjoint() * prp * Hbar;

    const CMat B = phz * phz.adjoint();
    out.Q1 = linalg::block_trace_matrix(B, Rtilde_m, L);
    out.Q2 = linalg::block_trace_matrix(prp, Rtilde_m, L);
    out.R_o = R_mk + out.cascaded + out.Q1 + out.Q2;
    return out;
}

ChannelStatistics aggregated_covariance(const SpatialModel &model) {
    ChannelStatistics st;
    st.M = model.M;
    st.K = model.K;
    st.L = model.L;
    st.obar = ApUeTable<CVec>(model.M, model.K);
    st.R_o = ApUeTable<CMat>(model.M, model.K);
    st.cascaded = ApUeTable<CMat>(model.M, model.K);
    st.Q1 = ApUeTable<CMat>(model.M, model.K);
    st.Q2 = ApUeTable<CMat>(model.M, model.K);
    for (int m = 0; m < model.M; ++m) {
        for (int k = 0; k < model.K; ++k) {
            AggregatedPair p = aggregated_covariance(model.R_mk(m, k), model.los.Hbar[m], model.los.phi,
                                                     model.nlos.Rtilde_k[k], model.nlos.Rtilde_m[m],
                                                     model.los.zbar[k]);
            st.obar(m, k) = std::move(p.obar);
            st.R_o(m, k) = std::move(p.R_o);
            st.cascaded(m, k) = std::move(p.cascaded);
            st.Q1(m, k) = std::move(p.Q1);
            st.Q2(m, k) = std::move(p.Q2);
        }
    }
    return st;
}

CVec assemble_aggregated(const CVec &g, const CMat &H, const CVec &phi, const CVec &z) {
    return g + H.adjoint() * phi.cwiseProduct(z);
}

ChannelSampler::ChannelSampler(const SpatialModel &model) : model_(&model) {
    g_factor_ = ApUeTable<CMat>(model.M, model.K);
    for (int m = 0; m < model.M; ++m) {
        for (int k = 0; k < model.K; ++k) {
            g_factor_(m, k) = linalg::psd_factor(model.R_mk(m, k), "direct-link correlation");
        }
    }
    h_factor_.reserve(model.M);
    for (int m = 0; m < model.M; ++m) {
        h_factor_.push_back(linalg::psd_factor(model.nlos.Rtilde_m[m], "RIS-AP NLoS covariance"));
    }
    z_factor_.reserve(model.K);
    for (int k = 0; k < model.K; ++k) {
        z_factor_.push_back(linalg::psd_factor(model.nlos.Rtilde_k[k], "UE-RIS NLoS covariance"));
    }
}

ChannelRealization ChannelSampler::draw(RandomStream &rng) const {
    RVec theta(model_->K);
    for (int k = 0; k < model_->K; ++k) {
        theta(k) = rng.uniform(-kPi, kPi);
    }
    return draw(rng, theta);
}

ChannelRealization ChannelSampler::draw(RandomStream &rng, const RVec &theta) const {
    const SpatialModel &sm = *model_;
    const int M = sm.M, K = sm.K, L = sm.L, N = sm.N;
    ChannelRealization r;
    r.theta = theta;
    r.g = ApUeTable<CVec>(M, K);
    for (int m = 0; m < M; ++m) {
        for (int k = 0; k < K; ++k) {
            r.g(m, k) = g_factor_(m, k) * rng.complex_normal(L);
        }
    }
    r.H.reserve(M);
    for (int m = 0; m < M; ++m) {
        const CVec v = h_factor_[m] * rng.complex_normal(static_cast<Eigen::Index>(N) * L);
        // column-wise reshape: column l holds entries lN .. lN + N - 1
        r.H.push_back(sm.los.Hbar[m] + Eigen::Map<const CMat>(v.data(), N, L));
    }
    r.z.reserve(K);
    for (int k = 0; k < K; ++k) {
        r.z.push_back(std::exp(kJ * theta(k)) * sm.los.zbar[k] + z_factor_[k] * rng.complex_normal(N));
    }
    r.o = ApUeTable<CVec>(M, K);
    for (int m = 0; m < M; ++m) {
        for (int k = 0; k < K; ++k) {
            r.o(m, k) = assemble_aggregated(r.g(m, k), r.H[m], sm.los.phi, r.z[k]);
        }
    }
    return r;
}

} // namespace riscf
