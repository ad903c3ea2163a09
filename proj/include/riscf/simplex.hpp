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

#ifndef RISCF_SIMPLEX_HPP
#define RISCF_SIMPLEX_HPP

#include "riscf/types.hpp"

#include <optional>

namespace riscf {

// Feasibility of { x : G x <= h, x >= 0 } by phase-1 simplex on a dense
// tableau (Bland's rule, rows scaled to unit max-norm). Returns a feasible
// point or nullopt. Throws Error("lp_failure") if pivoting does not
// terminate.
struct LpResult {
    std::optional<RVec> x;
    int pivots = 0;
    double infeasibility = 0.0; // optimal phase-1 objective
};

LpResult lp_feasible_point(const RMat &G, const RVec &h, double tol = 1e-9);

} // namespace riscf

#endif
