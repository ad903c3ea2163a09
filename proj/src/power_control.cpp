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

#include "riscf/power_control.hpp"

#include "riscf/simplex.hpp"

#include <cmath>
#include <optional>

namespace riscf {

const char *to_string(PowerMethod m) {
    switch (m) {
    case PowerMethod::full:
        return "full";
    case PowerMethod::fpc:
        return "fpc";
    case PowerMethod::maxmin:
        return "maxmin";
    }
    return "?";
}

PowerMethod power_method_from_string(const std::string &s) {
    if (s == "full") {
        return PowerMethod::full;
    }
    if (s == "fpc") {
        return PowerMethod::fpc;
    }
    if (s == "maxmin") {
        return PowerMethod::maxmin;
    }
    throw Error("invalid_config", "unknown power mode '" + s + "'");
}

PowerAllocation full_power(int K, double p_max) {
    PowerAllocation out;
    out.p = RVec::Constant(K, p_max);
    out.method = PowerMethod::full;
    return out;
}

RVec trace_sums(const ChannelStatistics &chan) {
    RVec s = RVec::Zero(chan.K);
    for (int k = 0; k < chan.K; ++k) {
        for (int m = 0; m < chan.M; ++m) {
            s(k) += chan.R_o(m, k).trace().real();
        }
    }
    return s;
}

PowerAllocation fractional_power_control(const RVec &trace_sums, double alpha, double p_max) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw Error("invalid_argument", "fractional_power_control: alpha must lie in [0, 1)");
    }
    if (trace_sums.size() == 0 || !(trace_sums.minCoeff() > 0.0)) {
        throw Error("invalid_argument", "fractional_power_control: trace sums must be positive");
    }
    const double smin = trace_sums.minCoeff();
    PowerAllocation out;
    out.method = PowerMethod::fpc;
    out.p.resize(trace_sums.size());
    for (Eigen::Index k = 0; k < trace_sums.size(); ++k) {
        // exact 1 for the weakest UE, whatever alpha is
        const double ratio = trace_sums(k) == smin ? 1.0 : smin / trace_sums(k);
        out.p(k) = std::pow(ratio, alpha) * p_max;
    }
    return out;
}

int bisection_iteration_bound(double t_max, double t_min, double eps) {
    return static_cast<int>(std::ceil(std::log2((t_max - t_min) / eps)));
}

namespace {

struct Coefficients {
    RVec c;  // |a^H Eu|^2
    RMat q;  // (k, i): a_k^H T_ki a_k
    RVec e;  // a^H (sigma^2 D + U) a
};

Coefficients coefficients(const SinrTerms &terms, const std::vector<CVec> &a, double noise_power) {
    const int K = terms.K;
    Coefficients out{RVec(K), RMat(K, K), RVec(K)};
    for (int k = 0; k < K; ++k) {
        const UatfMatrices u = closed_form_uatf(terms, k);
        const CVec &ak = a.at(k);
        out.c(k) = std::norm(ak.dot(u.Eu));
        for (int i = 0; i < K; ++i) {
            out.q(k, i) = ak.dot(u.T[i] * ak).real();
        }
        out.e(k) = noise_power * ak.cwiseAbs2().dot(u.D) + ak.dot(u.U * ak).real();
    }
    return out;
}

RVec sinr_of(const Coefficients &cf, const RVec &p) {
    const Eigen::Index K = p.size();
    RVec out(K);
    for (Eigen::Index k = 0; k < K; ++k) {
        const double den = cf.q.row(k).dot(p) - p(k) * cf.c(k) + cf.e(k);
        if (!(den > 0.0)) {
            throw Error("nonpositive_denominator", "maxmin_power_control: SINR denominator not positive");
        }
        out(k) = p(k) * cf.c(k) / den;
    }
    return out;
}

std::optional<RVec> feasible_at(const Coefficients &cf, double t, double p_max, double tol) {
    const Eigen::Index K = cf.c.size();
    RMat G = RMat::Zero(2 * K, K);
    RVec h(2 * K);
    for (Eigen::Index k = 0; k < K; ++k) {
        for (Eigen::Index i = 0; i < K; ++i) {
            G(k, i) = t * cf.q(k, i) * p_max;
        }
        G(k, k) -= (1.0 + t) * cf.c(k) * p_max;
        h(k) = -t * cf.e(k);
        G(K + k, k) = 1.0;
        h(K + k) = 1.0;
    }
    LpResult r = lp_feasible_point(G, h, tol);
    if (!r.x) {
        return std::nullopt;
    }
    return RVec(r.x->cwiseMin(1.0) * p_max);
}

PowerAllocation bisect(const Coefficients &cf, double p_max, const MaxMinOptions &opt) {
    const Eigen::Index K = cf.c.size();
    const RVec pfull = RVec::Constant(K, p_max);
    const RVec gfull = sinr_of(cf, pfull);

    PowerAllocation out;
    out.method = PowerMethod::maxmin;
    out.p = pfull;
    out.t = 0.0;
    double lo = 0.0;
    double hi = 2.0 * gfull.maxCoeff();
    out.t_upper = hi;
    while (hi - lo >= opt.epsilon) {
        const double t = 0.5 * (lo + hi);
        ++out.iterations;
        if (auto p = feasible_at(cf, t, p_max, opt.lp_tol)) {
            lo = t;
            out.p = *p;
            out.t = t;
        } else {
            hi = t;
        }
    }
    return out;
}

} // namespace

PowerAllocation maxmin_power_control(const SinrTerms &terms, double p_max, double noise_power,
                                     const MaxMinOptions &opt, const std::vector<CVec> *weights) {
    if (!(opt.epsilon > 0.0) || !(p_max > 0.0)) {
        throw Error("invalid_argument", "maxmin_power_control: epsilon and p_max must be positive");
    }
    const RVec pfull = RVec::Constant(terms.K, p_max);
    std::vector<CVec> a = weights ? *weights : optimal_lsfd_weights(terms, pfull, noise_power);
    PowerAllocation out = bisect(coefficients(terms, a, noise_power), p_max, opt);
    out.weights = a;
    for (int round = 0; round < opt.alternations; ++round) {
        a = optimal_lsfd_weights(terms, out.p, noise_power);
        PowerAllocation next = bisect(coefficients(terms, a, noise_power), p_max, opt);
        next.iterations += out.iterations;
        next.weights = a;
        out = std::move(next);
    }
    return out;
}

} // namespace riscf
