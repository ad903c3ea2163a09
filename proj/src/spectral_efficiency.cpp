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

#include "riscf/spectral_efficiency.hpp"

#include "riscf/linalg.hpp"

#include <cmath>
#include <sstream>

namespace riscf {

namespace {

double trace_real(const CMat &a, const CMat &b, const char *what) {
    const cplx t = (a.array() * b.transpose().array()).sum();
    return linalg::real_checked(t, a.norm() * b.norm(), what);
}

double quad_real(const CVec &x, const CMat &a, const char *what) {
    const cplx q = x.dot(a * x);
    return linalg::real_checked(q, x.squaredNorm() * a.norm(), what);
}

void check_powers(const SinrTerms &t, const RVec &p) {
    if (p.size() != t.K) {
        throw Error("dimension", "power vector must have K entries");
    }
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        if (!(p(k) >= 0.0)) {
            throw Error("invalid_argument", "powers must be non-negative");
        }
    }
}

double checked_ratio(double num, double den, int k) {
    if (!(den > 0.0)) {
        std::ostringstream os;
        os << "SINR denominator of UE " << k << " is not positive (" << den << ")";
        throw Error("nonpositive_denominator", os.str());
    }
    return num / den;
}

// a^H diag(d) a
double diag_quad(const CVec &a, const RVec &d) { return (a.cwiseAbs2().array() * d.array()).sum(); }

RVec lsfd_impl(const SinrTerms &t, const std::vector<CVec> &a, const RVec &p, double noise_power, bool with_emi) {
    check_powers(t, p);
    if (static_cast<int>(a.size()) != t.K) {
        throw Error("dimension", "need one weight vector per UE");
    }
    RVec out(t.K);
    for (int k = 0; k < t.K; ++k) {
        const CVec &ak = a[k];
        if (ak.size() != t.M) {
            throw Error("dimension", "weight vectors must have M entries");
        }
        const RVec zk = t.z.col(k);
        const cplx s = ak.dot(zk.cast<cplx>()); // tr(A^H Z)
        const double num = p(k) * std::norm(s);
        double den = 0.0;
        for (int i = 0; i < t.K; ++i) {
            den += p(i) * diag_quad(ak, t.xi[k].col(i));
        }
        for (int i : t.pilots.coset[k]) {
            if (i != k) {
                den += p(i) * coherent_interference(t, ak, k, i);
            }
        }
        if (with_emi) {
            den += diag_quad(ak, t.w.col(k));
        }
        const RVec jk = t.J.col(k);
        den += diag_quad(ak, noise_power * zk - p(k) * jk.cwiseAbs2());
        out(k) = checked_ratio(num, den, k);
    }
    return out;
}

} // namespace

SinrTerms build_sinr_terms(const ChannelStatistics &chan, const EstimationStatistics &est,
                           const EmiNoiseCovariance &emi, const PilotAssignment &pilots,
                           const std::vector<double> &pilot_power) {
    const int M = chan.M, K = chan.K;
    SinrTerms t;
    t.M = M;
    t.K = K;
    t.pilots = pilots;
    t.pilot_power = pilot_power;
    t.z.resize(M, K);
    t.J.resize(M, K);
    t.w.resize(M, K);
    t.xi.assign(K, RMat(M, K));
    t.varpi.assign(K, CMat(M, K));
    const double tp = pilots.tau_p;
    for (int m = 0; m < M; ++m) {
        for (int k = 0; k < K; ++k) {
            const CVec &ob = chan.obar(m, k);
            const CMat &om = est.Omega(m, k);
            const double pk = pilot_power[k] * tp;
            const double nb = ob.squaredNorm();
            t.J(m, k) = nb;
            t.z(m, k) = pk * om.trace().real() + nb;
            t.w(m, k) = quad_real(ob, emi.R_mm[m], "obar^H R_mm obar") + pk * trace_real(emi.R_mm[m], om, "tr(R_mm Omega)");
            for (int i = 0; i < K; ++i) {
                const CMat &ri = chan.R_o(m, i);
                const CVec &obi = chan.obar(m, i);
                t.xi[k](m, i) = pk * trace_real(ri, om, "tr(R^o Omega)") + quad_real(ob, ri, "obar^H R^o obar") +
                                pk * quad_real(obi, om, "obar^H Omega obar") + std::norm(ob.dot(obi));
                // tr(R^o_mi Psi^{-1} R^o_mk)
                t.varpi[k](m, i) = (ri.array() * est.PsiInvR(m, k).transpose().array()).sum();
            }
        }
    }
    return t;
}

double coherent_interference(const SinrTerms &t, const CVec &a, int k, int i) {
    const double tp = t.tau_p();
    const cplx s = a.dot(t.varpi[k].col(i)); // tr(A^H Delta)
    return t.pilot_power[k] * t.pilot_power[i] * tp * tp * std::norm(s);
}

RVec sinr_lsfd_closed_form(const SinrTerms &t, const std::vector<CVec> &a, const RVec &p, double noise_power) {
    return lsfd_impl(t, a, p, noise_power, true);
}

RVec sinr_lsfd_without_emi(const SinrTerms &t, const std::vector<CVec> &a, const RVec &p, double noise_power) {
    return lsfd_impl(t, a, p, noise_power, false);
}

RVec sinr_equal_weights(const SinrTerms &t, const RVec &p, double noise_power) {
    check_powers(t, p);
    const double tp = t.tau_p();
    RVec out(t.K);
    for (int k = 0; k < t.K; ++k) {
        const double num = p(k) * std::pow(t.z.col(k).sum(), 2);
        double den = 0.0;
        for (int i = 0; i < t.K; ++i) {
            den += p(i) * t.xi[k].col(i).sum();
        }
        for (int i : t.pilots.coset[k]) {
            if (i != k) {
                den += p(i) * t.pilot_power[k] * t.pilot_power[i] * tp * tp * std::norm(t.varpi[k].col(i).sum());
            }
        }
        den += t.w.col(k).sum();
        den += (noise_power * t.z.col(k) - p(k) * t.J.col(k).cwiseAbs2()).sum();
        out(k) = checked_ratio(num, den, k);
    }
    return out;
}

std::vector<CVec> equal_weights(int M, int K) { return std::vector<CVec>(K, CVec::Ones(M)); }

UatfMatrices closed_form_uatf(const SinrTerms &t, int k) {
    const int M = t.M;
    const double tp = t.tau_p();
    UatfMatrices u;
    const RVec zk = t.z.col(k);
    u.Eu = zk.cast<cplx>();
    u.D = zk;
    u.U = t.w.col(k).cast<cplx>().asDiagonal();
    u.T.reserve(t.K);
    for (int i = 0; i < t.K; ++i) {
        CMat T = CMat::Zero(M, M);
        if (i == k) {
            T = (zk * zk.transpose()).cast<cplx>();
            T.diagonal() += (t.xi[k].col(i) - t.J.col(k).cwiseAbs2()).cast<cplx>();
        } else if (t.pilots.shares(k, i)) {
            const CVec v = t.varpi[k].col(i);
            T = t.pilot_power[k] * t.pilot_power[i] * tp * tp * (v * v.adjoint());
            T.diagonal() += t.xi[k].col(i).cast<cplx>();
        } else {
            T.diagonal() = t.xi[k].col(i).cast<cplx>();
        }
        u.T.push_back(std::move(T));
    }
    return u;
}

CMat uatf_interference_matrix(const UatfMatrices &u, const RVec &p, int k, double noise_power) {
    const Eigen::Index M = u.Eu.size();
    CMat S = CMat::Zero(M, M);
    for (std::size_t i = 0; i < u.T.size(); ++i) {
        S += p(static_cast<Eigen::Index>(i)) * u.T[i];
    }
    S -= p(k) * (u.Eu * u.Eu.adjoint());
    S.diagonal() += (noise_power * u.D).cast<cplx>();
    S += u.U;
    return linalg::hermitian_part(S);
}

double sinr_uatf(const UatfMatrices &u, const CVec &a, const RVec &p, int k, double noise_power) {
    const CMat S = uatf_interference_matrix(u, p, k, noise_power);
    const double num = p(k) * std::norm(a.dot(u.Eu));
    const double den = a.dot(S * a).real();
    return checked_ratio(num, den, k);
}

CVec optimal_lsfd_weights(const UatfMatrices &u, const RVec &p, int k, double noise_power) {
    return linalg::hpd_solve(uatf_interference_matrix(u, p, k, noise_power), u.Eu, 1e12, "LSFD system matrix");
}

double optimal_sinr(const UatfMatrices &u, const RVec &p, int k, double noise_power) {
    const CVec a = optimal_lsfd_weights(u, p, k, noise_power);
    return p(k) * u.Eu.dot(a).real();
}

std::vector<CVec> optimal_lsfd_weights(const SinrTerms &t, const RVec &p, double noise_power) {
    std::vector<CVec> a;
    a.reserve(t.K);
    for (int k = 0; k < t.K; ++k) {
        a.push_back(optimal_lsfd_weights(closed_form_uatf(t, k), p, k, noise_power));
    }
    return a;
}

SeResult spectral_efficiency(const RVec &sinr, int tau_u, int tau_c) {
    if (tau_c < 1 || tau_u < 0 || tau_u > tau_c) {
        throw Error("invalid_argument", "spectral_efficiency: need 0 <= tau_u <= tau_c");
    }
    SeResult r;
    r.prelog = static_cast<double>(tau_u) / tau_c;
    r.sinr = sinr;
    r.se.resize(sinr.size());
    for (Eigen::Index k = 0; k < sinr.size(); ++k) {
        if (!(sinr(k) >= 0.0)) {
            throw Error("invalid_argument", "spectral_efficiency: negative SINR");
        }
        r.se(k) = r.prelog * std::log2(1.0 + sinr(k));
    }
    return r;
}

} // namespace riscf
