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

#ifndef RISCF_POWER_CONTROL_HPP
#define RISCF_POWER_CONTROL_HPP

#include "riscf/spectral_efficiency.hpp"

#include <string>

namespace riscf {

enum class PowerMethod { full, fpc, maxmin };

const char *to_string(PowerMethod m);
PowerMethod power_method_from_string(const std::string &s);

struct PowerAllocation {
    RVec p; // W per UE
    PowerMethod method = PowerMethod::full;
    int iterations = 0;     // bisection steps (maxmin)
    double t = 0.0;         // last feasible target (maxmin)
    double t_upper = 0.0;   // initial upper bracket (maxmin)
    std::vector<CVec> weights; // LSFD weights held during the bisection (maxmin)
};

PowerAllocation full_power(int K, double p_max);

// eta_k = (min_k' S_k' / S_k)^alpha with S_k = sum_m tr(R^o_mk).
PowerAllocation fractional_power_control(const RVec &trace_sums, double alpha, double p_max);

// S_k from channel statistics.
RVec trace_sums(const ChannelStatistics &chan);

struct MaxMinOptions {
    double epsilon = 1e-3;
    double lp_tol = 1e-9;
    // Outer rounds that recompute the LSFD weights at the current powers and
    // re-run the bisection. Experimental; 0 keeps the full-power weights.
    int alternations = 0;
};

// Bisection on t over LP feasibility of
//   p_k c_k >= t (sum_i p_i q_ki - p_k c_k + e_k),  0 <= p_k <= p_max,
// with c_k = |a_k^H E{u_kk}|^2, q_ki = a_k^H T_ki a_k, e_k = a_k^H (sigma^2 D_k + U_k) a_k
// for weights a_k fixed at the full-power optimum (or `weights` when given).
PowerAllocation maxmin_power_control(const SinrTerms &terms, double p_max, double noise_power,
                                     const MaxMinOptions &opt = {}, const std::vector<CVec> *weights = nullptr);

// ceil(log2((t_max - t_min) / eps))
int bisection_iteration_bound(double t_max, double t_min, double eps);

} // namespace riscf

#endif
