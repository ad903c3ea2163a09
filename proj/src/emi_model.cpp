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

#include "riscf/emi_model.hpp"

#include "riscf/linalg.hpp"

#include <cmath>

namespace riscf {

double sigma_r2_from_rho(double rho_db, double p_max, const RVec &beta_m) {
    if (beta_m.size() == 0) {
        throw Error("invalid_argument", "sigma_r2_from_rho: empty beta sequence");
    }
    if (std::isinf(rho_db) && rho_db > 0.0) {
        return 0.0;
    }
    const double rho = db_to_linear(rho_db);
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw Error("invalid_argument", "sigma_r2_from_rho: rho must be positive");
    }
    return p_max * beta_m.sum() / (static_cast<double>(beta_m.size()) * rho);
}

CMat emi_noise_covariance(const CMat &Hbar, const CVec &phi, const RMat &R, const CMat &Rtilde_m, double sigma_r2,
                          double area, CMat *Q_out) {
    const Eigen::Index N = Hbar.rows();
    const Eigen::Index L = Hbar.cols();
    if (phi.size() != N || R.rows() != N || R.cols() != N || Rtilde_m.rows() != N * L || Rtilde_m.cols() != N * L) {
        throw Error("dimension", "emi_noise_covariance: inconsistent dimensions");
    }
    if (sigma_r2 < 0.0) {
        throw Error("invalid_argument", "emi_noise_covariance: negative EMI power");
    }
    const double s = sigma_r2 * area;
    const CMat prp = phi.asDiagonal() * R.cast<cplx>() * phi.conjugate().asDiagonal();
    const CMat Q = s * linalg::block_trace_matrix(prp, Rtilde_m, L);
    CMat out = s * (Hbar.adjoint() * prp * Hbar) + Q;
    if (Q_out) {
        *Q_out = Q;
    }
    return out;
}

EmiNoiseCovariance emi_noise_covariance(const SpatialModel &model, double sigma_r2) {
    EmiNoiseCovariance out;
    out.R_mm.reserve(model.M);
    out.Q_m.reserve(model.M);
    for (int m = 0; m < model.M; ++m) {
        CMat Q;
        out.R_mm.push_back(emi_noise_covariance(model.los.Hbar[m], model.los.phi, model.ris.R, model.nlos.Rtilde_m[m],
                                                sigma_r2, model.ris.area, &Q));
        out.Q_m.push_back(std::move(Q));
    }
    return out;
}

CMat pilot_noise_covariance(const CMat &R_mm, int tau_p, double noise_power) {
    const auto L = R_mm.rows();
    return static_cast<double>(tau_p) * (R_mm + noise_power * CMat::Identity(L, L));
}

EmiSampler::EmiSampler(const RMat &R, double sigma_r2, double area) {
    if (sigma_r2 < 0.0) {
        throw Error("invalid_argument", "EmiSampler: negative EMI power");
    }
    factor_ = linalg::psd_factor(CMat((area * sigma_r2) * R.cast<cplx>()), "EMI covariance");
    active_ = sigma_r2 > 0.0;
}

CMat EmiSampler::draw(RandomStream &rng, int count) const {
    const Eigen::Index n = factor_.rows();
    CMat w(n, count);
    for (int c = 0; c < count; ++c) {
        w.col(c) = rng.complex_normal(n);
    }
    return factor_ * w;
}

CMat sample_emi(const RMat &R, double sigma_r2, double area, int count, RandomStream &rng) {
    return EmiSampler(R, sigma_r2, area).draw(rng, count);
}

} // namespace riscf
