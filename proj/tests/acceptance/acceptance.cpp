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

// Acceptance suite. One PASS/FAIL line per criterion; exit status is
// nonzero if any selected criterion fails.
//
//   riscf_acceptance            all criteria
//   riscf_acceptance 3 7        selected criteria
//
// Seeds below were fixed before the first run and are not tuned.

#include "riscf/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace riscf;

namespace {

constexpr std::uint64_t kSeed = 20261019;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            if (pass) {
                detail << " | first failure: " << what;
            }
            pass = false;
        }
    }
};

SystemConfig reference_config() {
    SystemConfig c;
    c.M = 10;
    c.K = 5;
    c.L = 1;
    c.N_H = c.N_V = 4;
    c.tau_p = 3;
    c.rho_db = 20.0;
    return c;
}

Scenario drop(const SystemConfig &c, int index, std::uint64_t seed = kSeed) {
    RandomStream rng(derive_seed(seed, {static_cast<std::uint64_t>(StreamTag::scenario),
                                        static_cast<std::uint64_t>(index)}));
    return generate_scenario(c, rng);
}

double average_se(const Snapshot &s, Combiner comb, PowerMethod pm) {
    const ModeResult r = evaluate_mode(s, comb, pm);
    return spectral_efficiency(r.sinr, s.config.tau_u(), s.config.tau_c).se.mean();
}

double q05(std::vector<double> v) { return emit_cdf(std::move(v)).q05; }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// |mc - cf| <= 3 se, per real component; zero-variance components must match
// to roundoff.
struct ZTally {
    int n = 0, fails = 0;
    double worst = 0.0;
    std::string worst_name;

    void add(double mc, double se, double cf, const std::string &name) {
        ++n;
        const double diff = std::abs(mc - cf);
        double z;
        if (se > 0.0) {
            z = diff / se;
        } else {
            z = diff <= 1e-12 * std::max(std::abs(cf), 1e-300) ? 0.0 : INFINITY;
        }
        if (z > 3.0) {
            ++fails;
        }
        if (z > worst) {
            worst = z;
            worst_name = name;
        }
    }
    void add(cplx mc, cplx se, cplx cf, const std::string &name) {
        add(mc.real(), se.real(), cf.real(), name + ".re");
        add(mc.imag(), se.imag(), cf.imag(), name + ".im");
    }
};

// ---------------------------------------------------------------------------

Outcome criterion1() {
    Outcome out;
    SystemConfig c;
    c.M = 3;
    c.K = 4;
    c.L = 2;
    c.N_H = 4;
    c.N_V = 2;
    c.tau_p = 2;
    c.rho_db = 20.0;
    const Scenario sc = drop(c, 0);
    const Snapshot s = make_snapshot(c, sc);
    if (!(s.sigma_r2 > 0.0)) {
        out.require(false, "EMI inactive");
        return out;
    }
    const SinrTerms &t = s.terms;

    RunOptions ro;
    ro.trials = 200000;
    ro.seed = derive_seed(kSeed, {1, 1});
    const UatfEstimate e = estimate_uatf_terms(s.oracle_inputs(), ro);

    ZTally z, xi, cross, w;
    for (int k = 0; k < c.K; ++k) {
        const UatfMatrices cf = closed_form_uatf(t, k);
        for (int m = 0; m < c.M; ++m) {
            const std::string tag = "k" + std::to_string(k) + "m" + std::to_string(m);
            z.add(e.mean[k].Eu(m), e.se[k].Eu(m), cplx(t.z(m, k), 0.0), "E{u}" + tag);
            z.add(e.mean[k].D(m), e.se[k].D(m), t.z(m, k), "D" + tag);
            w.add(e.mean[k].U(m, m).real(), e.se[k].U(m, m).real(), t.w(m, k), "w" + tag);
        }
        for (int i = 0; i < c.K; ++i) {
            for (int m = 0; m < c.M; ++m) {
                const std::string tag = "k" + std::to_string(k) + "i" + std::to_string(i) + "m" + std::to_string(m);
                xi.add(e.mean[k].T[i](m, m).real(), e.se[k].T[i](m, m).real(), cf.T[i](m, m).real(), "T" + tag);
                if (!s.pilots.shares(k, i)) {
                    continue;
                }
                for (int n = m + 1; n < c.M; ++n) {
                    cross.add(e.mean[k].T[i](m, n), e.se[k].T[i](m, n), cf.T[i](m, n),
                              "T" + tag + "n" + std::to_string(n));
                }
            }
        }
    }
    // the cross rows above rely on the closed form for m != n; check that it is
    // the product form of the case table rather than reading it back blindly
    for (int k = 0; k < c.K; ++k) {
        const UatfMatrices cf = closed_form_uatf(t, k);
        for (int i : s.pilots.coset[k]) {
            for (int m = 0; m < c.M; ++m) {
                for (int n = 0; n < c.M; ++n) {
                    if (m == n) {
                        continue;
                    }
                    const double tp = t.tau_p();
                    const cplx expect =
                        i == k ? cplx(t.z(m, k) * t.z(n, k), 0.0)
                               : t.pilot_power[k] * t.pilot_power[i] * tp * tp * t.varpi[k](m, i) *
                                     std::conj(t.varpi[k](n, i));
                    out.require(std::abs(cf.T[i](m, n) - expect) <= 1e-12 * std::abs(expect) + 1e-300,
                                "case-table cross product");
                }
            }
        }
    }
    auto report = [&](const char *name, const ZTally &tl) {
        out.detail << ' ' << name << ": " << tl.n - tl.fails << '/' << tl.n << " within 3se (worst z "
                   << tl.worst << " at " << tl.worst_name << ");";
        out.require(tl.fails == 0, std::string(name) + " outside 3 standard errors");
    };
    report("z", z);
    report("xi", xi);
    report("cross", cross);
    report("w", w);

    // SINR level at 2e4 trials, independent stream
    RunOptions r2;
    r2.trials = 20000;
    r2.seed = derive_seed(kSeed, {1, 2});
    const UatfEstimate e2 = estimate_uatf_terms(s.oracle_inputs(), r2);
    const RVec p = RVec::Constant(c.K, c.p_max);
    const std::vector<CVec> ones = equal_weights(c.M, c.K);
    const std::vector<CVec> opt = optimal_lsfd_weights(t, p, c.noise_power);
    const RVec g24 = sinr_lsfd_closed_form(t, opt, p, c.noise_power);
    const RVec g38 = sinr_equal_weights(t, p, c.noise_power);
    const RVec m24 = sinr_from_estimates(e2, opt, p, c.noise_power);
    const RVec m38 = sinr_from_estimates(e2, ones, p, c.noise_power);
    double worst24 = 0.0, worst38 = 0.0;
    for (int k = 0; k < c.K; ++k) {
        worst24 = std::max(worst24, rel(m24(k), g24(k)));
        worst38 = std::max(worst38, rel(m38(k), g38(k)));
    }
    out.detail << " SINR rel gap optimal " << worst24 << ", equal " << worst38 << " (limit 0.02)";
    out.require(worst24 <= 0.02, "optimal-weight SINR gap");
    out.require(worst38 <= 0.02, "equal-weight SINR gap");
    return out;
}

Outcome criterion2() {
    Outcome out;
    SystemConfig c;
    c.M = 2;
    c.K = 2;
    c.L = 2;
    c.N_H = c.N_V = 4;
    c.tau_p = 2;
    c.rho_db = 20.0;
    const Scenario sc = drop(c, 0);
    const Snapshot s = make_snapshot(c, sc);
    const int M = c.M, K = c.K, L = c.L;

    RunOptions ro;
    ro.trials = 200000;
    ro.seed = derive_seed(kSeed, {2, 1});
    const ChannelSampler sampler(s.model);
    // otilde = o - obar e^{j theta}, stacked over (m, k)
    const OracleEstimate ro_est = second_moment(
        static_cast<Eigen::Index>(M) * K * L,
        [&](RandomStream &rng) {
            const ChannelRealization ch = sampler.draw(rng);
            CVec v(M * K * L);
            for (int m = 0; m < M; ++m) {
                for (int k = 0; k < K; ++k) {
                    v.segment((m * K + k) * L, L) = ch.o(m, k) - std::exp(kJ * ch.theta(k)) * s.chan.obar(m, k);
                }
            }
            return v;
        },
        ro);

    ZTally tro, tpn;
    for (int m = 0; m < M; ++m) {
        for (int k = 0; k < K; ++k) {
            const int b = (m * K + k) * L;
            for (int l = 0; l < L; ++l) {
                for (int lp = l; lp < L; ++lp) {
                    const std::string tag = "R^o m" + std::to_string(m) + "k" + std::to_string(k) + "(" +
                                            std::to_string(l) + "," + std::to_string(lp) + ")";
                    if (l == lp) {
                        tro.add(ro_est.mean(b + l, b + l).real(), ro_est.std_error(b + l, b + l).real(),
                                s.chan.R_o(m, k)(l, l).real(), tag);
                    } else {
                        tro.add(ro_est.mean(b + l, b + lp), ro_est.std_error(b + l, b + lp), s.chan.R_o(m, k)(l, lp),
                                tag);
                    }
                }
            }
        }
    }

    // projected pilot-phase noise (H_m^H Phi N + N_m) phi_k^*, k = 0
    const EmiSampler emi(s.model.ris.R, s.sigma_r2, s.model.ris.area);
    const CMat book = pilot_book(c.tau_p);
    const CVec phik = book.col(s.pilots.pilot[0]).conjugate();
    RunOptions rp = ro;
    rp.seed = derive_seed(kSeed, {2, 2});
    const double sd = std::sqrt(c.noise_power);
    const OracleEstimate pn = second_moment(
        static_cast<Eigen::Index>(M) * L,
        [&](RandomStream &rng) {
            const ChannelRealization ch = sampler.draw(rng);
            const CMat Nm = emi.draw(rng, c.tau_p);
            CVec v(M * L);
            for (int m = 0; m < M; ++m) {
                CMat noise(L, c.tau_p);
                for (int q = 0; q < c.tau_p; ++q) {
                    noise.col(q) = sd * rng.complex_normal(L);
                }
                const CMat Y = ch.H[m].adjoint() * s.model.los.phi.asDiagonal() * Nm + noise;
                v.segment(m * L, L) = Y * phik;
            }
            return v;
        },
        rp);
    for (int m = 0; m < M; ++m) {
        const CMat cov = pilot_noise_covariance(s.emi.R_mm[m], c.tau_p, c.noise_power);
        for (int l = 0; l < L; ++l) {
            for (int lp = l; lp < L; ++lp) {
                const std::string tag =
                    "pilot m" + std::to_string(m) + "(" + std::to_string(l) + "," + std::to_string(lp) + ")";
                const int a = m * L + l, b = m * L + lp;
                if (l == lp) {
                    tpn.add(pn.mean(a, a).real(), pn.std_error(a, a).real(), cov(l, l).real(), tag);
                } else {
                    tpn.add(pn.mean(a, b), pn.std_error(a, b), cov(l, lp), tag);
                }
            }
        }
    }
    // the EMI part must be visible for the check to mean anything
    const double emi_share = s.emi.R_mm[0].trace().real() / (s.emi.R_mm[0].trace().real() + L * c.noise_power);
    out.detail << " R^o " << tro.n - tro.fails << '/' << tro.n << " (worst z " << tro.worst << "); pilot noise "
               << tpn.n - tpn.fails << '/' << tpn.n << " (worst z " << tpn.worst << "); EMI share of AP0 noise "
               << emi_share << ";";
    out.require(tro.fails == 0, "R^o entry outside 3se: " + tro.worst_name);
    out.require(tpn.fails == 0, "pilot noise entry outside 3se: " + tpn.worst_name);
    return out;
}

// Independent plain cell-free evaluator (direct links only, Rayleigh):
//   u_mki = ghat_mk^H g_mi, ghat = sqrt(p_k) R_k Psi^{-1} y.
RVec plain_cf_sinr(const Snapshot &s, const std::vector<CVec> &a, const RVec &p) {
    const SystemConfig &c = s.config;
    const int M = c.M, K = c.K, L = c.L;
    const double tp = c.tau_p;
    RVec out(K);
    for (int k = 0; k < K; ++k) {
        CVec Eu(M);
        std::vector<CVec> mean_ui(K, CVec(M));
        std::vector<RVec> second(K, RVec(M)); // E|u_mki|^2
        RVec z(M);
        for (int m = 0; m < M; ++m) {
            CMat Psi = c.noise_power * CMat::Identity(L, L);
            for (int j = 0; j < K; ++j) {
                if (s.pilots.pilot[j] == s.pilots.pilot[k]) {
                    Psi += s.pilot_power[j] * tp * s.model.R_mk(m, j);
                }
            }
            const CMat Pinv = Psi.inverse();
            const CMat &Rk = s.model.R_mk(m, k);
            z(m) = s.pilot_power[k] * tp * (Rk * Pinv * Rk).trace().real();
            for (int i = 0; i < K; ++i) {
                const CMat &Ri = s.model.R_mk(m, i);
                const bool shared = s.pilots.pilot[i] == s.pilots.pilot[k];
                const cplx cross = std::sqrt(s.pilot_power[k] * s.pilot_power[i]) * tp * (Ri * Pinv * Rk).trace();
                mean_ui[i](m) = shared ? cross : cplx{};
                second[i](m) = s.pilot_power[k] * tp * (Ri * Rk * Pinv * Rk).trace().real() +
                               (shared ? std::norm(cross) : 0.0);
            }
        }
        const CVec &ak = a[k];
        cplx num{};
        for (int m = 0; m < M; ++m) {
            num += std::conj(ak(m)) * z(m);
        }
        double den = 0.0;
        for (int i = 0; i < K; ++i) {
            double e = 0.0;
            for (int m = 0; m < M; ++m) {
                for (int n = 0; n < M; ++n) {
                    if (m == n) {
                        e += std::norm(ak(m)) * second[i](m);
                    } else {
                        e += (std::conj(ak(m)) * mean_ui[i](m) * std::conj(std::conj(ak(n)) * mean_ui[i](n))).real();
                    }
                }
            }
            den += p(i) * e;
        }
        den -= p(k) * std::norm(num);
        for (int m = 0; m < M; ++m) {
            den += c.noise_power * std::norm(ak(m)) * z(m);
        }
        out(k) = p(k) * std::norm(num) / den;
    }
    return out;
}

Outcome criterion3() {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    double worst_a = 0.0, worst_b = 0.0, worst_c = 0.0;
    for (int d = 0; d < 5; ++d) {
        SystemConfig c;
        c.M = 4;
        c.K = 5;
        c.L = 1 + d % 3;
        c.N_H = c.N_V = 3;
        c.tau_p = 2 + d % 2;
        const Scenario sc = drop(c, d);
        const RVec p = RVec::Constant(c.K, c.p_max);

        // (a) sigma_r^2 = 0
        const Snapshot s0 = make_snapshot(c, sc, 0.0);
        const std::vector<CVec> a0 = optimal_lsfd_weights(s0.terms, p, c.noise_power);
        const RVec e24 = sinr_lsfd_closed_form(s0.terms, a0, p, c.noise_power);
        const RVec e39 = sinr_lsfd_without_emi(s0.terms, a0, p, c.noise_power);
        out.require(s0.terms.w.cwiseAbs().maxCoeff() == 0.0, "W not zero at sigma_r^2 = 0");
        for (int k = 0; k < c.K; ++k) {
            worst_a = std::max(worst_a, rel(e24(k), e39(k)));
        }
        // (b) all-ones weights vs the plain-sum form
        const Snapshot s = make_snapshot(c, sc);
        out.require(s.sigma_r2 > 0.0, "EMI inactive");
        const RVec w24 = sinr_lsfd_closed_form(s.terms, equal_weights(c.M, c.K), p, c.noise_power);
        const RVec w38 = sinr_equal_weights(s.terms, p, c.noise_power);
        for (int k = 0; k < c.K; ++k) {
            worst_b = std::max(worst_b, rel(w24(k), w38(k)));
        }
        // (c) RIS off
        SystemConfig off = c;
        off.ris_enabled = false;
        const Snapshot so = make_snapshot(off, sc);
        for (int m = 0; m < c.M; ++m) {
            out.require(so.emi.R_mm[m].cwiseAbs().maxCoeff() == 0.0, "R_mm not zero with RIS off");
            for (int k = 0; k < c.K; ++k) {
                out.require(so.chan.Q1(m, k).cwiseAbs().maxCoeff() == 0.0 &&
                                so.chan.Q2(m, k).cwiseAbs().maxCoeff() == 0.0 &&
                                so.chan.cascaded(m, k).cwiseAbs().maxCoeff() == 0.0,
                            "Q terms not zero with RIS off");
                out.require((so.chan.R_o(m, k) - so.model.R_mk(m, k)).cwiseAbs().maxCoeff() == 0.0,
                            "R^o != R_mk with RIS off");
            }
        }
        out.require(so.terms.w.cwiseAbs().maxCoeff() == 0.0, "W not zero with RIS off");
        for (const auto &weights : {equal_weights(c.M, c.K), optimal_lsfd_weights(so.terms, p, c.noise_power)}) {
            const RVec g = sinr_lsfd_closed_form(so.terms, weights, p, c.noise_power);
            const RVec ref = plain_cf_sinr(so, weights, p);
            for (int k = 0; k < c.K; ++k) {
                worst_c = std::max(worst_c, rel(g(k), ref(k)));
            }
        }
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out.detail << " max rel diff: no-EMI closure " << worst_a << ", all-ones closure " << worst_b
               << ", RIS-off vs plain CF " << worst_c << "; " << ms << " ms";
    out.require(worst_a <= 1e-12, "no-EMI closure");
    out.require(worst_b <= 1e-12, "all-ones closure");
    out.require(worst_c <= 1e-10, "RIS-off reduction");
    out.require(ms < 1000.0, "runtime over 1 s");
    return out;
}

Outcome criterion4() {
    Outcome out;
    const SystemConfig c = reference_config();
    const int S = 100;
    std::vector<double> se_mr, se_lsfd;
    int violations = 0;
    for (int s = 0; s < S; ++s) {
        const Snapshot snap = make_snapshot(c, drop(c, s));
        const ModeResult mr = evaluate_mode(snap, Combiner::mr, PowerMethod::full);
        const ModeResult ls = evaluate_mode(snap, Combiner::lsfd, PowerMethod::full);
        for (int k = 0; k < c.K; ++k) {
            if (ls.sinr(k) < mr.sinr(k)) {
                ++violations;
            }
        }
        const RVec a = spectral_efficiency(mr.sinr, c.tau_u(), c.tau_c).se;
        const RVec b = spectral_efficiency(ls.sinr, c.tau_u(), c.tau_c).se;
        se_mr.insert(se_mr.end(), a.data(), a.data() + a.size());
        se_lsfd.insert(se_lsfd.end(), b.data(), b.data() + b.size());
    }
    const double ratio = q05(se_lsfd) / q05(se_mr);
    out.detail << ' ' << S << " scenarios; LSFD < equal-weight in " << violations << " UE cases; 5%-quantile SE MR "
               << q05(se_mr) << ", LSFD " << q05(se_lsfd) << ", ratio " << ratio << " (need >= 1.3)";
    out.require(violations == 0, "LSFD below equal weights");
    out.require(ratio >= 1.3, "quantile ratio");
    return out;
}

Outcome criterion5() {
    Outcome out;
    const SystemConfig base = reference_config();
    const double rhos[] = {10.0, 20.0, 30.0, INFINITY};
    const int S = 20;
    int gap_fail = 0;
    double avg[4] = {0, 0, 0, 0};
    for (int s = 0; s < S; ++s) {
        const Scenario sc = drop(base, s);
        double se[4];
        for (int j = 0; j < 4; ++j) {
            SystemConfig c = base;
            c.rho_db = rhos[j];
            se[j] = average_se(make_snapshot(c, sc), Combiner::lsfd, PowerMethod::full);
            avg[j] += se[j] / S;
        }
        for (int j = 0; j + 1 < 4; ++j) {
            out.require(se[j] <= se[j + 1], "SE increased with EMI power in scenario " + std::to_string(s));
        }
        if (!(se[3] - se[0] > se[3] - se[2])) {
            ++gap_fail;
        }
    }
    out.detail << " avg SE at rho 10/20/30/inf dB: " << avg[0] << ' ' << avg[1] << ' ' << avg[2] << ' ' << avg[3]
               << "; gap(10) " << avg[3] - avg[0] << " vs gap(30) " << avg[3] - avg[2]
               << "; per-scenario gap ordering failures " << gap_fail;
    out.require(gap_fail == 0, "gap at 10 dB not larger than at 30 dB");
    return out;
}

Outcome criterion6() {
    Outcome out;
    const SystemConfig base = reference_config();
    const int sides[] = {4, 8, 12};
    const int S = 100;
    double avg[3] = {0, 0, 0};
    for (int s = 0; s < S; ++s) {
        for (int j = 0; j < 3; ++j) {
            SystemConfig c = base;
            c.N_H = c.N_V = sides[j];
            avg[j] += average_se(make_snapshot(c, drop(c, s)), Combiner::lsfd, PowerMethod::full) / S;
        }
    }
    const double g1 = avg[1] - avg[0], g2 = avg[2] - avg[1];
    char buf[256];
    std::snprintf(buf, sizeof(buf), " avg SE N=16/64/144: %.9f %.9f %.9f; gains %.3e, %.3e", avg[0], avg[1], avg[2],
                  g1, g2);
    out.detail << buf;
    out.require(g1 >= 0.0 && g2 >= 0.0, "average SE decreases with N");
    out.require(g2 < g1, "no diminishing returns");
    return out;
}

Outcome criterion7() {
    Outcome out;
    const SystemConfig c = reference_config();
    const int S = 50;
    std::vector<double> se_full, se_mm;
    int worst_iter_margin = 1 << 30;
    double worst_feas = 0.0, worst_min_gain = INFINITY;
    for (int s = 0; s < S; ++s) {
        const Snapshot snap = make_snapshot(c, drop(c, s));
        const ModeResult full = evaluate_mode(snap, Combiner::lsfd, PowerMethod::full);
        const ModeResult mm = evaluate_mode(snap, Combiner::lsfd, PowerMethod::maxmin);
        const int bound = static_cast<int>(std::ceil(std::log2(mm.power.t_upper / 1e-3)));
        worst_iter_margin = std::min(worst_iter_margin, bound - mm.power.iterations);
        out.require(mm.power.iterations <= bound, "iteration bound");
        for (int k = 0; k < c.K; ++k) {
            out.require(mm.power.p(k) >= 0.0 && mm.power.p(k) <= c.p_max * (1.0 + 1e-12), "power box");
            // feasibility of the returned allocation at the last feasible target
            const double short_fall = (mm.power.t - mm.sinr(k)) / std::max(mm.power.t, 1e-300);
            worst_feas = std::max(worst_feas, short_fall);
        }
        worst_min_gain = std::min(worst_min_gain, mm.sinr.minCoeff() - full.sinr.minCoeff());
        const RVec a = spectral_efficiency(full.sinr, c.tau_u(), c.tau_c).se;
        const RVec b = spectral_efficiency(mm.sinr, c.tau_u(), c.tau_c).se;
        se_full.insert(se_full.end(), a.data(), a.data() + a.size());
        se_mm.insert(se_mm.end(), b.data(), b.data() + b.size());
    }
    out.detail << ' ' << S << " scenarios; min iteration slack " << worst_iter_margin << "; worst relative shortfall "
               << worst_feas << " (limit 1e-8); worst min-SINR change " << worst_min_gain
               << " (limit -1e-3); 5%-quantile SE full " << q05(se_full) << ", max-min " << q05(se_mm);
    out.require(worst_feas <= 1e-8, "allocation infeasible");
    out.require(worst_min_gain >= -1e-3, "min SINR dropped");
    out.require(q05(se_mm) > q05(se_full), "5%-quantile not improved");
    return out;
}

Outcome criterion8() {
    Outcome out;
    SystemConfig c = reference_config();
    c.alpha_fpc = 0.6;
    const int S = 50;
    int better = 0;
    for (int s = 0; s < S; ++s) {
        const Snapshot snap = make_snapshot(c, drop(c, s));
        const RVec ts = trace_sums(snap.chan);
        const PowerAllocation fpc = fractional_power_control(ts, c.alpha_fpc, c.p_max);
        Eigen::Index weakest;
        ts.minCoeff(&weakest);
        out.require(fpc.p(weakest) == c.p_max, "weakest UE eta != 1");
        for (int k = 0; k < c.K; ++k) {
            for (int j = 0; j < c.K; ++j) {
                if (ts(j) > ts(k)) {
                    out.require(fpc.p(j) <= fpc.p(k), "eta not monotone in trace sum");
                }
            }
        }
        const ModeResult full = evaluate_mode(snap, Combiner::lsfd, PowerMethod::full);
        const ModeResult f = evaluate_mode(snap, Combiner::lsfd, PowerMethod::fpc);
        const double se_full = spectral_efficiency(full.sinr, c.tau_u(), c.tau_c).se.minCoeff();
        const double se_fpc = spectral_efficiency(f.sinr, c.tau_u(), c.tau_c).se.minCoeff();
        if (se_fpc >= se_full) {
            ++better;
        }
    }
    out.detail << " weakest-UE SE with FPC >= full power in " << better << '/' << S << " scenarios";
    out.require(2 * better >= S, "FPC helps the weakest UE in fewer than half the scenarios");
    return out;
}

Outcome criterion9() {
    Outcome out;
    const SystemConfig base = reference_config();
    const double fr[] = {0.125, 0.25, 0.5};
    const int S = 100;
    double avg[3] = {0, 0, 0};
    for (int s = 0; s < S; ++s) {
        for (int j = 0; j < 3; ++j) {
            SystemConfig c = base;
            c.d_H = c.d_V = fr[j];
            avg[j] += average_se(make_snapshot(c, drop(c, s)), Combiner::lsfd, PowerMethod::full) / S;
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof(buf), " avg SE d=lambda/8, lambda/4, lambda/2: %.9f %.9f %.9f", avg[0], avg[1], avg[2]);
    out.detail << buf;
    out.require(avg[2] > avg[0] && avg[2] > avg[1], "lambda/2 is not the maximizer");
    return out;
}

std::string read_file(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion10() {
    Outcome out;
    const std::string yaml = R"(schema_version: 1
system:
  M: 4
  K: 3
  L: 2
  N_H: 3
  N_V: 3
  tau_p: 2
  rho_db: 20
sweep:
  param: rho_db
  values: [10, inf]
n_scenarios: 3
mc_trials: 1500
mc_chunk: 100
modes:
  - {combiner: LSFD, emi: on, power: full, ris: on}
  - {combiner: MR, emi: on, power: maxmin, ris: on}
  - {combiner: LSFD, emi: off, power: fpc, ris: off}
)";
    const ExperimentSpec spec = parse_experiment(yaml);
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / ("riscf_accept_" + std::to_string(kSeed));
    std::vector<std::string> csvs;
    const int thread_counts[] = {1, 4, 1, 3};
    for (std::size_t i = 0; i < 4; ++i) {
        const ExperimentResult r = run_experiment(spec, kSeed, thread_counts[i]);
        const fs::path dir = root / std::to_string(i);
        write_outputs(dir.string(), spec, r, yaml, kSeed, thread_counts[i]);
        csvs.push_back(read_file(dir / "results.csv"));
        out.require(read_file(dir / "cdf.csv") == read_file(root / "0" / "cdf.csv"), "cdf bytes differ");
    }
    bool same = true;
    for (const auto &s : csvs) {
        same = same && s == csvs[0];
    }
    const ExperimentResult other = run_experiment(spec, kSeed + 1, 1);
    const bool seed_matters = format_csv(spec, other) != csvs[0];
    fs::remove_all(root);
    out.detail << " 4 runs (threads 1/4/1/3), " << csvs[0].size() << " CSV bytes each, identical: "
               << (same ? "yes" : "no") << "; different seed changes output: " << (seed_matters ? "yes" : "no");
    out.require(same, "CSV bytes differ between runs");
    out.require(seed_matters, "seed has no effect");
    return out;
}

} // namespace

int main(int argc, char **argv) {
    const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                            criterion5, criterion6, criterion7, criterion8,
                                                            criterion9, criterion10};
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int n = std::atoi(argv[i]);
        if (n < 1 || n > static_cast<int>(criteria.size())) {
            std::cerr << "unknown criterion '" << argv[i] << "'\n";
            return 2;
        }
        selected.push_back(n);
    }
    if (selected.empty()) {
        for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) {
            selected.push_back(i);
        }
    }
    int failures = 0;
    for (int n : selected) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[n - 1]();
        } catch (const std::exception &e) {
            o.pass = false;
            o.detail << " exception: " << e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d %s (%.1f s):%s\n", n, o.pass ? "PASS" : "FAIL", s, o.detail.str().c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
