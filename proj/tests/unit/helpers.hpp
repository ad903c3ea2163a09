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

#ifndef RISCF_TEST_HELPERS_HPP
#define RISCF_TEST_HELPERS_HPP

#include "riscf/linalg.hpp"
#include "riscf/pipeline.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

namespace riscf::test {

inline RandomStream stream(std::uint64_t a, std::uint64_t b = 0) {
    return RandomStream(derive_seed(20261019, {static_cast<std::uint64_t>(StreamTag::test), a, b}));
}

// Random Hermitian PSD matrix with trace about `scale * n`.
inline CMat random_psd(int n, double scale, RandomStream &rng) {
    CMat a(n, n);
    for (int j = 0; j < n; ++j) {
        a.col(j) = rng.complex_normal(n);
    }
    CMat c = a * a.adjoint() / static_cast<double>(n);
    return scale * (c + c.adjoint()) / 2.0;
}

inline CMat random_matrix(int r, int c, double scale, RandomStream &rng) {
    CMat a(r, c);
    for (int j = 0; j < c; ++j) {
        a.col(j) = std::sqrt(scale) * rng.complex_normal(r);
    }
    return a;
}

// A model whose RIS path is as strong as the direct path, so every cascaded
// term is visible to a sampling oracle.
inline SpatialModel strong_cascade_model(int M, int K, int L, int n_h, int n_v, RandomStream &rng) {
    SpatialModel sm;
    sm.M = M;
    sm.K = K;
    sm.L = L;
    sm.N = n_h * n_v;
    const int N = sm.N;
    sm.ris = ris_sinc_correlation(n_h, n_v, 0.25, 0.25, 1.0);
    sm.ris.area = 0.5;
    sm.R_mk = ApUeTable<CMat>(M, K);
    sm.theta_mk = RMat::Zero(M, K);
    for (int m = 0; m < M; ++m) {
        for (int k = 0; k < K; ++k) {
            sm.R_mk(m, k) = random_psd(L, 1.0, rng);
        }
    }
    sm.los.phi = CVec(N);
    for (int n = 0; n < N; ++n) {
        sm.los.phi(n) = std::exp(kJ * (0.3 + 0.7 * n));
    }
    for (int m = 0; m < M; ++m) {
        sm.los.Hbar.push_back(random_matrix(N, L, 0.4, rng));
        sm.nlos.Rtilde_m.push_back(random_psd(N * L, 0.3, rng));
        sm.nlos.R_m.push_back(CMat::Identity(L, L));
    }
    for (int k = 0; k < K; ++k) {
        sm.los.zbar.push_back(std::sqrt(0.5) * rng.complex_normal(N));
        sm.nlos.Rtilde_k.push_back(random_psd(N, 0.5, rng));
    }
    sm.los.theta_m = RVec::Zero(M);
    return sm;
}

// Counts |mc - ref| > 3 se over real components.
struct Tally {
    int n = 0, fails = 0;
    double worst = 0.0;

    void add(double mc, double se, double ref) {
        ++n;
        const double z = std::abs(mc - ref) / se;
        worst = std::max(worst, z);
        fails += z > 3.0 ? 1 : 0;
    }
    void add(cplx mc, cplx se, cplx ref) {
        add(mc.real(), se.real(), ref.real());
        add(mc.imag(), se.imag(), ref.imag());
    }
    // upper triangle of a Hermitian matrix
    void add_hermitian(const CMat &mc, const CMat &se, const CMat &ref) {
        for (Eigen::Index i = 0; i < ref.rows(); ++i) {
            add(mc(i, i).real(), se(i, i).real(), ref(i, i).real());
            for (Eigen::Index j = i + 1; j < ref.cols(); ++j) {
                add(mc(i, j), se(i, j), ref(i, j));
            }
        }
    }
};

inline double rel_diff(const CMat &a, const CMat &b) {
    return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), 1e-300);
}

inline SystemConfig small_config() {
    SystemConfig c;
    c.M = 4;
    c.K = 4;
    c.L = 2;
    c.N_H = c.N_V = 3;
    c.tau_p = 2;
    c.rho_db = 10.0;
    return c;
}

inline Scenario drop(const SystemConfig &c, std::uint64_t index) {
    RandomStream rng = stream(1000, index);
    return generate_scenario(c, rng);
}

} // namespace riscf::test

#endif
