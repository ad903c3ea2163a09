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

#include "riscf/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace riscf {

void Moments::add(const RVec &x) {
    if (n_ == 0 && mean_.size() == 0) {
        mean_ = RVec::Zero(x.size());
        m2_ = RVec::Zero(x.size());
    }
    ++n_;
    const RVec delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_.array() += delta.array() * (x - mean_).array();
}

void Moments::merge(const Moments &o) {
    if (o.n_ == 0) {
        return;
    }
    if (n_ == 0) {
        *this = o;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(o.n_);
    const double n = na + nb;
    const RVec delta = o.mean_ - mean_;
    mean_ += delta * (nb / n);
    m2_ += o.m2_ + delta.cwiseAbs2() * (na * nb / n);
    n_ += o.n_;
}

RVec Moments::std_error() const {
    if (n_ < 2) {
        throw Error("too_few_trials", "standard error needs at least two trials");
    }
    const double n = static_cast<double>(n_);
    return (m2_.array().max(0.0) / ((n - 1.0) * n)).sqrt();
}

Moments run_trials(Eigen::Index dim, const TrialFn &fn, const RunOptions &opt) {
    if (opt.trials < 2 || opt.chunk < 1) {
        throw Error("too_few_trials", "run_trials: need at least two trials");
    }
    const long chunks = (opt.trials + opt.chunk - 1) / opt.chunk;
    std::vector<Moments> partial(chunks);
    std::atomic<long> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;

    auto worker = [&]() {
        RVec x(dim);
        for (;;) {
            const long c = next.fetch_add(1);
            if (c >= chunks || failed.load()) {
                return;
            }
            try {
                Moments mom(dim);
                const long end = std::min(opt.trials, (c + 1) * opt.chunk);
                for (long t = c * opt.chunk; t < end; ++t) {
                    RandomStream rng(derive_seed(opt.seed, {static_cast<std::uint64_t>(StreamTag::monte_carlo),
                                                            static_cast<std::uint64_t>(t)}));
                    x.setZero();
                    fn(t, rng, x);
                    mom.add(x);
                }
                partial[c] = std::move(mom);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!failed.exchange(true)) {
                    error = std::current_exception();
                }
                return;
            }
        }
    };

    const int threads = std::max(1, opt.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    Moments total(dim);
    for (const auto &p : partial) {
        total.merge(p);
    }
    return total;
}

namespace {

// Flat layout of the UatF observables.
struct Layout {
    int M, K;
    bool full_emi;
    Eigen::Index u(int k, int i, int m) const { return 2 * ((static_cast<Eigen::Index>(k) * K + i) * M + m); }
    Eigen::Index T(int k, int i, int m, int n) const {
        return base_T() + 2 * (((static_cast<Eigen::Index>(k) * K + i) * M + m) * M + n);
    }
    Eigen::Index D(int k, int m) const { return base_D() + static_cast<Eigen::Index>(k) * M + m; }
    Eigen::Index U(int k, int m, int n) const {
        return base_U() + 2 * ((static_cast<Eigen::Index>(k) * M + m) * M + n);
    }
    Eigen::Index base_T() const { return 2 * static_cast<Eigen::Index>(K) * K * M; }
    Eigen::Index base_D() const { return base_T() + 2 * static_cast<Eigen::Index>(K) * K * M * M; }
    Eigen::Index base_U() const { return base_D() + static_cast<Eigen::Index>(K) * M; }
    Eigen::Index dim() const { return base_U() + 2 * static_cast<Eigen::Index>(K) * M * M; }
};

void put(RVec &x, Eigen::Index at, cplx v) {
    x(at) = v.real();
    x(at + 1) = v.imag();
}

cplx get(const RVec &x, Eigen::Index at) { return {x(at), x(at + 1)}; }

} // namespace

UatfEstimate estimate_uatf_terms(const OracleInputs &in, const RunOptions &opt, bool full_emi_matrix) {
    if (opt.trials < 1000) {
        throw Error("too_few_trials", "estimate_uatf_terms: need at least 1000 trials");
    }
    const SpatialModel &model = *in.model;
    const int M = model.M, K = model.K, L = model.L;
    const int tp = in.pilots->tau_p;
    const Layout lay{M, K, full_emi_matrix};
    const ChannelSampler sampler(model);
    const EmiSampler emi(model.ris.R, in.sigma_r2, model.ris.area);
    const double noise_sd = std::sqrt(in.noise_power);

    auto trial = [&](long, RandomStream &rng, RVec &x) {
        const ChannelRealization ch = sampler.draw(rng);
        const CMat pilot_emi = emi.draw(rng, tp);
        std::vector<CMat> noise;
        noise.reserve(M);
        for (int m = 0; m < M; ++m) {
            CMat nm(L, tp);
            for (int c = 0; c < tp; ++c) {
                nm.col(c) = noise_sd * rng.complex_normal(L);
            }
            noise.push_back(std::move(nm));
        }
        const CMat data_emi = emi.draw(rng, 1);

        const PilotObservation obs =
            synthesize_pilot_observation(ch, model.los.phi, pilot_emi, noise, *in.pilots, in.pilot_power);
        ApUeTable<CVec> oh(M, K);
        for (int m = 0; m < M; ++m) {
            for (int k = 0; k < K; ++k) {
                oh(m, k) = mmse_estimate(obs.y(m, k), *in.chan, *in.est, m, k, ch.theta, *in.pilots, in.pilot_power);
            }
        }
        // reflected data-phase EMI at each AP: H_m^H Phi n
        std::vector<CVec> refl(M);
        const CVec pn = model.los.phi.cwiseProduct(data_emi.col(0));
        for (int m = 0; m < M; ++m) {
            refl[m] = ch.H[m].adjoint() * pn;
        }
        CVec u(M), e(M);
        for (int k = 0; k < K; ++k) {
            for (int i = 0; i < K; ++i) {
                for (int m = 0; m < M; ++m) {
                    u(m) = oh(m, k).dot(ch.o(m, i));
                    put(x, lay.u(k, i, m), u(m));
                }
                for (int m = 0; m < M; ++m) {
                    for (int n = 0; n < M; ++n) {
                        put(x, lay.T(k, i, m, n), u(m) * std::conj(u(n)));
                    }
                }
            }
            for (int m = 0; m < M; ++m) {
                x(lay.D(k, m)) = oh(m, k).squaredNorm();
                e(m) = oh(m, k).dot(refl[m]);
            }
            for (int m = 0; m < M; ++m) {
                for (int n = 0; n < M; ++n) {
                    if (full_emi_matrix || m == n) {
                        put(x, lay.U(k, m, n), e(m) * std::conj(e(n)));
                    }
                }
            }
        }
    };

    const Moments mom = run_trials(lay.dim(), trial, opt);
    const RVec mean = mom.mean();
    const RVec se = mom.std_error();

    UatfEstimate out;
    out.trials = mom.count();
    auto unpack = [&](const RVec &x, std::vector<UatfMatrices> &dst, std::vector<CMat> &udst) {
        dst.resize(K);
        udst.resize(K);
        for (int k = 0; k < K; ++k) {
            UatfMatrices &d = dst[k];
            d.Eu.resize(M);
            d.D.resize(M);
            d.U = CMat::Zero(M, M);
            d.T.assign(K, CMat(M, M));
            udst[k].resize(M, K);
            for (int i = 0; i < K; ++i) {
                for (int m = 0; m < M; ++m) {
                    udst[k](m, i) = get(x, lay.u(k, i, m));
                    for (int n = 0; n < M; ++n) {
                        d.T[i](m, n) = get(x, lay.T(k, i, m, n));
                    }
                }
            }
            d.Eu = udst[k].col(k);
            for (int m = 0; m < M; ++m) {
                d.D(m) = x(lay.D(k, m));
                for (int n = 0; n < M; ++n) {
                    d.U(m, n) = get(x, lay.U(k, m, n));
                }
            }
        }
    };
    unpack(mean, out.mean, out.u_mean);
    unpack(se, out.se, out.u_se);
    return out;
}

RVec sinr_from_estimates(const UatfEstimate &est, const std::vector<CVec> &a, const RVec &p, double noise_power) {
    const int K = static_cast<int>(est.mean.size());
    RVec out(K);
    for (int k = 0; k < K; ++k) {
        out(k) = sinr_uatf(est.mean[k], a.at(k), p, k, noise_power);
    }
    return out;
}

OracleEstimate second_moment(Eigen::Index dim, const std::function<CVec(RandomStream &)> &draw,
                             const RunOptions &opt) {
    auto trial = [&](long, RandomStream &rng, RVec &x) {
        const CVec v = draw(rng);
        for (Eigen::Index i = 0; i < dim; ++i) {
            for (Eigen::Index j = 0; j < dim; ++j) {
                const cplx s = v(i) * std::conj(v(j));
                x(2 * (i * dim + j)) = s.real();
                x(2 * (i * dim + j) + 1) = s.imag();
            }
        }
    };
    const Moments mom = run_trials(2 * dim * dim, trial, opt);
    OracleEstimate out;
    out.trials = mom.count();
    out.mean.resize(dim, dim);
    out.std_error.resize(dim, dim);
    const RVec se = mom.std_error();
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            const Eigen::Index at = 2 * (i * dim + j);
            out.mean(i, j) = {mom.mean()(at), mom.mean()(at + 1)};
            out.std_error(i, j) = {se(at), se(at + 1)};
        }
    }
    return out;
}

} // namespace riscf
