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

#include "riscf/spatial_correlation.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>

namespace riscf {

double sinc(double y) {
    if (std::abs(y) < 1e-12) {
        return 1.0;
    }
    return std::sin(kPi * y) / (kPi * y);
}

RisCorrelation ris_sinc_correlation(int n_h, int n_v, double width, double height, double wavelength) {
    if (n_h < 1 || n_v < 1 || !(width > 0.0) || !(height > 0.0) || !(wavelength > 0.0)) {
        throw Error("invalid_argument", "ris_sinc_correlation: grid and spacings must be positive");
    }
    const int n = n_h * n_v;
    RisCorrelation out;
    out.area = width * height;
    out.element_positions.reserve(n);
    for (int x = 0; x < n; ++x) {
        out.element_positions.emplace_back(0.0, (x % n_h) * width, (x / n_h) * height);
    }
    out.R.resize(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double d = (out.element_positions[i] - out.element_positions[j]).norm();
            out.R(i, j) = sinc(2.0 * d / wavelength);
        }
    }
    return out;
}

void gauss_hermite(int order, RVec &nodes, RVec &weights) {
    if (order < 1) {
        throw Error("invalid_argument", "gauss_hermite: order must be >= 1");
    }
    RVec diag = RVec::Zero(order);
    RVec sub(std::max(order - 1, 0));
    for (int i = 1; i < order; ++i) {
        sub(i - 1) = std::sqrt(i / 2.0);
    }
    Eigen::SelfAdjointEigenSolver<RMat> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) {
        throw Error("quadrature", "gauss_hermite: eigen solver failed");
    }
    nodes = es.eigenvalues();
    weights.resize(order);
    const double mu0 = std::sqrt(kPi);
    for (int i = 0; i < order; ++i) {
        const double v = es.eigenvectors()(0, i);
        weights(i) = mu0 * v * v;
    }
}

namespace {

struct Rule {
    RVec nodes, weights;
};

const Rule &cached_rule(int order) {
    static std::mutex mu;
    static std::map<int, Rule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) {
        Rule r;
        gauss_hermite(order, r.nodes, r.weights);
        it = cache.emplace(order, std::move(r)).first;
    }
    return it->second;
}

// E{exp(j a sin(theta + delta))} for each a in `freqs`, delta ~ N(0, sigma^2).
CVec gaussian_phase_average(const RVec &freqs, double theta, double sigma, int order) {
    const Rule &rule = cached_rule(order);
    CVec out = CVec::Zero(freqs.size());
    const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
    for (int q = 0; q < order; ++q) {
        const double delta = std::sqrt(2.0) * sigma * rule.nodes(q);
        const double s = std::sin(theta + delta);
        for (Eigen::Index i = 0; i < freqs.size(); ++i) {
            out(i) += rule.weights(q) * std::exp(kJ * (freqs(i) * s));
        }
    }
    return out * inv_sqrt_pi;
}

} // namespace

CMat gaussian_local_scattering(double beta, double theta, double sigma, int antennas, double spacing) {
    if (!(sigma > 0.0) || antennas < 1) {
        throw Error("invalid_argument", "gaussian_local_scattering: sigma > 0 and L >= 1 required");
    }
    RVec freqs(antennas);
    for (int d = 0; d < antennas; ++d) {
        freqs(d) = 2.0 * kPi * spacing * d;
    }
    int order = 30;
    CVec prev = gaussian_phase_average(freqs, theta, sigma, order);
    bool converged = false;
    constexpr int kMaxOrder = 1920;
    while (order < kMaxOrder) {
        order *= 2;
        CVec next = gaussian_phase_average(freqs, theta, sigma, order);
        const double diff = (next - prev).cwiseAbs().maxCoeff();
        const double ref = std::max(next.cwiseAbs().maxCoeff(), 1e-300);
        prev = std::move(next);
        if (diff <= 1e-9 * ref) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw Error("quadrature", "gaussian_local_scattering: Gauss-Hermite quadrature did not converge");
    }
    CMat r(antennas, antennas);
    for (int l = 0; l < antennas; ++l) {
        for (int n = 0; n < antennas; ++n) {
            const int d = l - n;
            r(l, n) = beta * (d >= 0 ? prev(d) : std::conj(prev(-d)));
        }
    }
    return r;
}

namespace {

double azimuth(const Point3 &from, const Point3 &to, double side) {
    const Point3 d = wrapped_displacement(from, to, side);
    return std::atan2(d.y(), d.x());
}

} // namespace

LosComponents los_components(const Scenario &scenario, const SystemConfig &config) {
    const int M = scenario.aps();
    const int K = scenario.ues();
    const int L = config.L;
    const int N = config.N();
    const double side = config.area_side;

    LosComponents los;
    los.phi = CVec::Constant(N, std::exp(kJ * config.ris_phase));
    los.theta_m.resize(M);
    los.beta_m_los.resize(M);
    los.beta_m_nlos.resize(M);
    los.beta_k_los.resize(K);
    los.beta_k_nlos.resize(K);

    los.Hbar.reserve(M);
    for (int m = 0; m < M; ++m) {
        const double kappa = scenario.kappa_m(m);
        los.beta_m_los(m) = kappa / (kappa + 1.0) * scenario.beta_m(m);
        los.beta_m_nlos(m) = scenario.beta_m(m) / (kappa + 1.0);
        const double theta = azimuth(scenario.ap_positions[m], scenario.ris_position, side);
        los.theta_m(m) = theta;
        const double amp = std::sqrt(los.beta_m_los(m));
        CMat h(N, L);
        for (int n = 0; n < N; ++n) {
            const cplx v = amp * std::exp(kJ * (2.0 * kPi * config.d_H * n * std::sin(theta)));
            h.row(n).setConstant(v);
        }
        los.Hbar.push_back(std::move(h));
    }

    const RisCorrelation grid = ris_sinc_correlation(config.N_H, config.N_V, config.element_width(),
                                                     config.element_height(), config.wavelength());
    los.zbar.reserve(K);
    for (int k = 0; k < K; ++k) {
        const double kappa = scenario.kappa_k(k);
        los.beta_k_los(k) = kappa / (kappa + 1.0) * scenario.beta_k(k);
        los.beta_k_nlos(k) = scenario.beta_k(k) / (kappa + 1.0);
        const double amp = std::sqrt(los.beta_k_los(k));
        CVec z(N);
        if (config.zbar_model == ZbarModel::ones) {
            z.setConstant(amp);
        } else {
            const Point3 dir = wrapped_displacement(scenario.ris_position, scenario.ue_positions[k], side).normalized();
            for (int n = 0; n < N; ++n) {
                const double path = grid.element_positions[n].dot(dir);
                z(n) = amp * std::exp(kJ * (2.0 * kPi * path / config.wavelength()));
            }
        }
        los.zbar.push_back(std::move(z));
    }
    return los;
}

CMat kronecker(const CMat &a, const CMat &b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

NlosCovariances nlos_covariances(const RisCorrelation &ris, const Scenario &scenario, const LosComponents &los,
                                 const SystemConfig &config) {
    const int M = scenario.aps();
    const int K = scenario.ues();
    const int L = config.L;
    const int N = config.N();
    if (ris.R.rows() != N || static_cast<int>(los.Hbar.size()) != M || static_cast<int>(los.zbar.size()) != K) {
        throw Error("dimension", "nlos_covariances: inconsistent dimensions");
    }
    const double sigma = config.asd_deg * kPi / 180.0;
    const CMat Rc = ris.R.cast<cplx>();
    NlosCovariances out;
    out.R_m.reserve(M);
    out.Rtilde_m.reserve(M);
    for (int m = 0; m < M; ++m) {
        CMat Rm = gaussian_local_scattering(1.0, los.theta_m(m), sigma, L, config.ap_antenna_spacing);
        const CMat Rr = los.beta_m_nlos(m) * ris.area * Rc;
        out.Rtilde_m.push_back(kronecker(Rm.transpose(), Rr) / (L * N * scenario.beta_m(m)));
        out.R_m.push_back(std::move(Rm));
    }
    out.Rtilde_k.reserve(K);
    for (int k = 0; k < K; ++k) {
        out.Rtilde_k.push_back(los.beta_k_nlos(k) * ris.area * Rc);
    }
    return out;
}

SpatialModel build_spatial_model(const SystemConfig &config, const Scenario &scenario) {
    SpatialModel model;
    model.M = scenario.aps();
    model.K = scenario.ues();
    model.L = config.L;
    model.N = config.N();
    model.ris = ris_sinc_correlation(config.N_H, config.N_V, config.element_width(), config.element_height(),
                                     config.wavelength());
    model.los = los_components(scenario, config);
    model.nlos = nlos_covariances(model.ris, scenario, model.los, config);

    const double sigma = config.asd_deg * kPi / 180.0;
    model.R_mk = ApUeTable<CMat>(model.M, model.K);
    model.theta_mk.resize(model.M, model.K);
    for (int m = 0; m < model.M; ++m) {
        for (int k = 0; k < model.K; ++k) {
            const Point3 d = wrapped_displacement(scenario.ap_positions[m], scenario.ue_positions[k], config.area_side);
            const double theta = std::atan2(d.y(), d.x());
            model.theta_mk(m, k) = theta;
            model.R_mk(m, k) =
                gaussian_local_scattering(scenario.beta_mk(m, k), theta, sigma, model.L, config.ap_antenna_spacing);
        }
    }
    if (!config.ris_enabled) {
        disable_ris(model);
    }
    return model;
}

void disable_ris(SpatialModel &model) {
    model.ris_enabled = false;
    for (auto &h : model.los.Hbar) {
        h.setZero();
    }
    for (auto &z : model.los.zbar) {
        z.setZero();
    }
    for (auto &r : model.nlos.Rtilde_m) {
        r.setZero();
    }
    for (auto &r : model.nlos.Rtilde_k) {
        r.setZero();
    }
}

} // namespace riscf
