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

#include "riscf/simplex.hpp"

#include <cmath>
#include <string>

namespace riscf {

LpResult lp_feasible_point(const RMat &G, const RVec &h, double tol) {
    const Eigen::Index m = G.rows();
    const Eigen::Index n = G.cols();
    if (h.size() != m) {
        throw Error("dimension", "lp_feasible_point: G and h disagree");
    }
    // Rows with h < 0 get negated (>= form) and need an artificial; the
    // rest start with their slack in the basis.
    //   columns: x (n) | slack (m) | artificial (m) | rhs
    const Eigen::Index cols = n + 2 * m + 1;
    RMat tab = RMat::Zero(m + 1, cols);
    std::vector<Eigen::Index> basis(m);
    for (Eigen::Index r = 0; r < m; ++r) {
        double scale = std::max(G.row(r).cwiseAbs().maxCoeff(), std::abs(h(r)));
        if (!(scale > 0.0)) {
            scale = 1.0;
        }
        const double sgn = h(r) < 0.0 ? -1.0 : 1.0;
        tab.row(r).head(n) = sgn * G.row(r) / scale;
        tab(r, n + r) = sgn;
        tab(r, cols - 1) = sgn * h(r) / scale;
        if (sgn < 0.0) {
            tab(r, n + m + r) = 1.0;
            basis[r] = n + m + r;
        } else {
            basis[r] = n + r;
        }
    }
    // phase-1 objective: minimize sum of artificials; reduced-cost row
    // stored as -(c_B B^-1 A - c) so that a negative entry improves.
    for (Eigen::Index r = 0; r < m; ++r) {
        if (basis[r] >= n + m) {
            tab.row(m) -= tab.row(r);
            tab(m, basis[r]) = 0.0;
        }
    }

    LpResult res;
    const int max_pivots = 50 * static_cast<int>(cols);
    for (;;) {
        Eigen::Index enter = -1;
        for (Eigen::Index c = 0; c < n + m; ++c) { // Bland: lowest index
            if (tab(m, c) < -tol) {
                enter = c;
                break;
            }
        }
        if (enter < 0) {
            break;
        }
        Eigen::Index leave = -1;
        double best = 0.0;
        for (Eigen::Index r = 0; r < m; ++r) {
            if (tab(r, enter) > tol) {
                const double ratio = tab(r, cols - 1) / tab(r, enter);
                if (leave < 0 || ratio < best - 1e-15 ||
                    (std::abs(ratio - best) <= 1e-15 && basis[r] < basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
        }
        if (leave < 0) {
            throw Error("lp_failure", "lp_feasible_point: unbounded phase-1 problem");
        }
        tab.row(leave) /= tab(leave, enter);
        for (Eigen::Index r = 0; r <= m; ++r) {
            if (r != leave && tab(r, enter) != 0.0) {
                tab.row(r) -= tab(r, enter) * tab.row(leave);
            }
        }
        basis[leave] = enter;
        if (++res.pivots > max_pivots) {
            throw Error("lp_failure", "lp_feasible_point: pivot limit reached after " + std::to_string(res.pivots));
        }
    }
    res.infeasibility = -tab(m, cols - 1);
    if (res.infeasibility > tol) {
        return res;
    }
    RVec x = RVec::Zero(n);
    for (Eigen::Index r = 0; r < m; ++r) {
        if (basis[r] < n) {
            x(basis[r]) = std::max(tab(r, cols - 1), 0.0);
        }
    }
    res.x = std::move(x);
    return res;
}

} // namespace riscf
