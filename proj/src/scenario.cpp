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

#include "riscf/scenario.hpp"

#include "riscf/linalg.hpp"

#include <cmath>

namespace riscf {

Point3 wrapped_displacement(const Point3 &a, const Point3 &b, double side) {
    Point3 best = b - a;
    double best_h = std::hypot(best.x(), best.y());
    // minimum over the 9 horizontal translates of b
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            Point3 cand = b - a;
            cand.x() += i * side;
            cand.y() += j * side;
            const double h = std::hypot(cand.x(), cand.y());
            if (h < best_h) {
                best_h = h;
                best = cand;
            }
        }
    }
    return best;
}

double wrapped_distance(const Point3 &a, const Point3 &b, double side) {
    return wrapped_displacement(a, b, side).norm();
}

double path_loss_db(double distance_m) {
    if (!(distance_m > 0.0)) {
        throw Error("invalid_argument", "path_loss_db: distance must be positive");
    }
    return -30.18 - 26.0 * std::log10(distance_m);
}

double rician_factor(double distance_m) { return std::pow(10.0, 1.3 - 0.003 * distance_m); }

RVec correlated_gaussian_field(const std::vector<Point3> &positions, double side, double sigma,
                               double decorrelation_distance, RandomStream &rng) {
    const auto n = static_cast<Eigen::Index>(positions.size());
    RMat cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            Point3 d = wrapped_displacement(positions[i], positions[j], side);
            d.z() = 0.0;
            cov(i, j) = sigma * sigma * std::pow(2.0, -d.norm() / decorrelation_distance);
        }
    }
    // 2^(-d / d_dc) over wrapped distances is not PSD on every drop
    const RMat f = linalg::psd_factor(linalg::regularize_psd(cov), "shadow fading covariance");
    return f * rng.normal(n);
}

ShadowFading correlated_shadow_fading(const std::vector<Point3> &aps, const std::vector<Point3> &ues,
                                      double side, double delta_f, double sigma_db,
                                      double decorrelation_distance, RandomStream &rng) {
    if (!(delta_f >= 0.0 && delta_f <= 1.0) || !(decorrelation_distance > 0.0)) {
        throw Error("invalid_argument", "correlated_shadow_fading: delta_f in [0,1] and d_dc > 0 required");
    }
    ShadowFading s;
    s.ap_field = correlated_gaussian_field(aps, side, sigma_db, decorrelation_distance, rng);
    s.ue_field = correlated_gaussian_field(ues, side, sigma_db, decorrelation_distance, rng);
    s.ris_term = sigma_db * rng.normal();

    const double wa = std::sqrt(delta_f);
    const double wb = std::sqrt(1.0 - delta_f);
    const auto m = static_cast<Eigen::Index>(aps.size());
    const auto k = static_cast<Eigen::Index>(ues.size());
    s.f_m = wa * s.ap_field.array() + wb * s.ris_term;
    s.f_k = wa * s.ue_field.array() + wb * s.ris_term;
    s.f_mk.resize(m, k);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            s.f_mk(i, j) = wa * s.ap_field(i) + wb * s.ue_field(j);
        }
    }
    return s;
}

Scenario generate_scenario(const SystemConfig &config, RandomStream &rng) {
    config.validate();
    const double side = config.area_side;
    Scenario sc;
    sc.ap_positions.reserve(config.M);
    sc.ue_positions.reserve(config.K);
    for (int m = 0; m < config.M; ++m) {
        const double x = rng.uniform(0.0, side);
        const double y = rng.uniform(0.0, side);
        sc.ap_positions.emplace_back(x, y, config.ap_height);
    }
    for (int k = 0; k < config.K; ++k) {
        const double x = rng.uniform(0.0, side);
        const double y = rng.uniform(0.0, side);
        sc.ue_positions.emplace_back(x, y, config.ue_height);
    }
    const auto [rx, ry] = config.ris_xy.value_or(std::make_pair(side / 2.0, side / 2.0));
    sc.ris_position = Point3(rx, ry, config.ris_height);

    const ShadowFading sf = correlated_shadow_fading(sc.ap_positions, sc.ue_positions, side, config.shadow_delta_f,
                                                     config.shadow_sigma_db, config.decorrelation_distance, rng);
    sc.shadow_m = sf.f_m;
    sc.shadow_k = sf.f_k;
    sc.shadow_mk = sf.f_mk;

    sc.d_m.resize(config.M);
    sc.d_k.resize(config.K);
    sc.d_mk.resize(config.M, config.K);
    sc.beta_m.resize(config.M);
    sc.beta_k.resize(config.K);
    sc.beta_mk.resize(config.M, config.K);
    sc.kappa_m.resize(config.M);
    sc.kappa_k.resize(config.K);

    for (int m = 0; m < config.M; ++m) {
        sc.d_m(m) = wrapped_distance(sc.ap_positions[m], sc.ris_position, side);
        sc.beta_m(m) = db_to_linear(path_loss_db(sc.d_m(m)) + sc.shadow_m(m));
        sc.kappa_m(m) = rician_factor(sc.d_m(m));
    }
    for (int k = 0; k < config.K; ++k) {
        sc.d_k(k) = wrapped_distance(sc.ue_positions[k], sc.ris_position, side);
        sc.beta_k(k) = db_to_linear(path_loss_db(sc.d_k(k)) + sc.shadow_k(k));
        sc.kappa_k(k) = config.ue_ris_rician_law ? rician_factor(sc.d_k(k)) : 0.0;
    }
    for (int m = 0; m < config.M; ++m) {
        for (int k = 0; k < config.K; ++k) {
            sc.d_mk(m, k) = wrapped_distance(sc.ap_positions[m], sc.ue_positions[k], side);
            sc.beta_mk(m, k) = db_to_linear(path_loss_db(sc.d_mk(m, k)) + sc.shadow_mk(m, k));
        }
    }
    return sc;
}

} // namespace riscf
