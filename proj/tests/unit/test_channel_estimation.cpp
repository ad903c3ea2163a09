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

#include "helpers.hpp"

#include "riscf/monte_carlo.hpp"

using namespace riscf;
using namespace riscf::test;

namespace {

struct Bundle {
    ChannelStatistics chan;
    EmiNoiseCovariance emi;
    PilotAssignment pilots;
    std::vector<double> power;
    EstimationStatistics est;
};

Bundle bundle(const SpatialModel &sm, double s2, int tau_p, double noise) {
    Bundle b;
    b.chan = aggregated_covariance(sm);
    b.emi = emi_noise_covariance(sm, s2);
    b.pilots = assign_pilots(sm.K, tau_p);
    for (int k = 0; k < sm.K; ++k) {
        b.power.push_back(0.5 + 0.25 * k);
    }
    b.est = estimation_statistics(b.chan, b.emi, b.pilots, b.power, noise);
    return b;
}

} // namespace

TEST_CASE("pilot assignment") {
    const PilotAssignment p = assign_pilots(5, 3);
    CHECK(p.pilot == std::vector<int>{0, 1, 2, 0, 1});
    CHECK(p.coset[0] == std::vector<int>{0, 3});
    CHECK(p.coset[3] == std::vector<int>{0, 3});
    CHECK(p.coset[2] == std::vector<int>{2});
    CHECK(p.shares(1, 4));
    CHECK_FALSE(p.shares(1, 2));
    CHECK_THROWS_AS(assign_pilots(0, 1), Error);
    CHECK_THROWS_AS(assign_pilots(3, 0), Error);
}

TEST_CASE("pilot book") {
    for (int tp : {1, 2, 3, 5}) {
        const CMat b = pilot_book(tp);
        CHECK(rel_diff(b.adjoint() * b, tp * CMat::Identity(tp, tp)) < 1e-14);
        CHECK((b.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("estimation statistics structure") {
    RandomStream rng = stream(40);
    const SpatialModel sm = strong_cascade_model(3, 4, 2, 2, 2, rng);
    const double noise = 0.2;
    const Bundle b = bundle(sm, 0.6, 2, noise);
    for (int m = 0; m < sm.M; ++m) {
        for (int k = 0; k < sm.K; ++k) {
            const CMat &psi = b.est.Psi(m, k);
            CHECK(linalg::min_eigenvalue(psi - noise * CMat::Identity(sm.L, sm.L)) >= -1e-12);
            CHECK(linalg::min_eigenvalue(b.est.C(m, k)) >= -1e-12);
            CHECK(linalg::min_eigenvalue(b.chan.R_o(m, k) - b.est.C(m, k)) >= -1e-12);
            // Psi from its definition
            CMat ref = b.emi.R_mm[m] + noise * CMat::Identity(sm.L, sm.L);
            for (int i : b.pilots.coset[k]) {
                ref += b.power[i] * 2 * b.chan.R_o(m, i);
            }
            CHECK(rel_diff(psi, ref) < 1e-13);
            CHECK(rel_diff(b.est.Omega(m, k), b.chan.R_o(m, k) * ref.inverse() * b.chan.R_o(m, k)) < 1e-10);
        }
    }
}

TEST_CASE("pure line of sight is estimated exactly") {
    RandomStream rng = stream(41);
    SpatialModel sm = strong_cascade_model(2, 2, 2, 2, 2, rng);
    for (int m = 0; m < sm.M; ++m) {
        for (int k = 0; k < sm.K; ++k) {
            sm.R_mk(m, k).setZero();
        }
        sm.nlos.Rtilde_m[m].setZero();
    }
    for (auto &r : sm.nlos.Rtilde_k) {
        r.setZero();
    }
    const Bundle b = bundle(sm, 0.5, 1, 0.1);
    const ChannelSampler sampler(sm);
    const EmiSampler emi(sm.ris.R, 0.5, sm.ris.area);
    RandomStream r = stream(41, 1);
    const ChannelRealization c = sampler.draw(r);
    std::vector<CMat> noise(sm.M);
    for (auto &n : noise) {
        n = std::sqrt(0.1) * r.complex_normal(sm.L);
    }
    const PilotObservation obs =
        synthesize_pilot_observation(c, sm.los.phi, emi.draw(r, 1), noise, b.pilots, b.power);
    for (int m = 0; m < sm.M; ++m) {
        for (int k = 0; k < sm.K; ++k) {
            const CVec oh = mmse_estimate(obs.y(m, k), b.chan, b.est, m, k, c.theta, b.pilots, b.power);
            CHECK((oh - c.o(m, k)).norm() <= 1e-13 * c.o(m, k).norm());
            CHECK(b.est.C(m, k).isZero(0));
        }
    }
}

TEST_CASE("estimation error covariance matches C") {
    RandomStream rng = stream(42);
    // two UEs on one pilot: contamination is in play
    const SpatialModel sm = strong_cascade_model(2, 2, 2, 2, 2, rng);
    const double s2 = 0.6, noise = 0.2;
    const Bundle b = bundle(sm, s2, 1, noise);
    const ChannelSampler sampler(sm);
    const EmiSampler emi(sm.ris.R, s2, sm.ris.area);
    RunOptions opt;
    opt.trials = 60000;
    opt.seed = 42;
    Tally t;
    for (int m = 0; m < sm.M; ++m) {
        for (int k = 0; k < sm.K; ++k) {
            const OracleEstimate e = second_moment(
                sm.L,
                [&](RandomStream &r) {
                    const ChannelRealization c = sampler.draw(r);
                    const CMat n_ris = emi.draw(r, 1);
                    std::vector<CMat> n_ap(sm.M);
                    for (auto &n : n_ap) {
                        n = std::sqrt(noise) * r.complex_normal(sm.L);
                    }
                    const PilotObservation obs =
                        synthesize_pilot_observation(c, sm.los.phi, n_ris, n_ap, b.pilots, b.power);
                    const CVec oh = mmse_estimate(obs.y(m, k), b.chan, b.est, m, k, c.theta, b.pilots, b.power);
                    return CVec(c.o(m, k) - oh);
                },
                opt);
            t.add_hermitian(e.mean, e.std_error, b.est.C(m, k));
        }
    }
    CHECK(t.n == 16);
    CHECK(t.fails <= 1);
}
