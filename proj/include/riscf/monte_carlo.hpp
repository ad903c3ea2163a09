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

#ifndef RISCF_MONTE_CARLO_HPP
#define RISCF_MONTE_CARLO_HPP

#include "riscf/spectral_efficiency.hpp"

#include <cstdint>
#include <functional>

namespace riscf {

// Running mean / sum of squared deviations of a real vector (Welford), with
// an order-sensitive merge so that chunked parallel runs reduce
// identically for any worker count.
class Moments {
  public:
    Moments() = default;
    explicit Moments(Eigen::Index dim) : mean_(RVec::Zero(dim)), m2_(RVec::Zero(dim)) {}

    void add(const RVec &x);
    void merge(const Moments &other);

    long count() const noexcept { return n_; }
    const RVec &mean() const noexcept { return mean_; }
    RVec std_error() const;

  private:
    long n_ = 0;
    RVec mean_, m2_;
};

struct RunOptions {
    long trials = 20000;
    int threads = 1;
    long chunk = 256; // trials per reduction chunk; part of the result's identity
    std::uint64_t seed = 1;
};

// Fills x for trial `t` using the per-trial stream; x has length dim.
using TrialFn = std::function<void(long t, RandomStream &rng, RVec &x)>;

// Runs trials 0..n-1 with stream derive_seed(seed, {monte_carlo, t}),
// chunks reduced in chunk order.
Moments run_trials(Eigen::Index dim, const TrialFn &fn, const RunOptions &opt);

// Sample mean and standard error of a matrix-valued expectation; complex
// entries carry separate real/imaginary standard errors.
struct OracleEstimate {
    CMat mean;
    CMat std_error; // (se of real part) + j (se of imag part)
    long trials = 0;
};

// E{x x^H} for x drawn by `draw`.
OracleEstimate second_moment(Eigen::Index dim, const std::function<CVec(RandomStream &)> &draw,
                             const RunOptions &opt);

// Everything the oracle needs about one system snapshot.
struct OracleInputs {
    const SpatialModel *model = nullptr;
    const ChannelStatistics *chan = nullptr;
    const EstimationStatistics *est = nullptr;
    const PilotAssignment *pilots = nullptr;
    std::vector<double> pilot_power;
    double sigma_r2 = 0.0;
    double noise_power = 0.0;
};

struct UatfEstimate {
    std::vector<UatfMatrices> mean;     // per UE k
    std::vector<UatfMatrices> se;       // same layout, component-wise standard errors
    std::vector<CMat> u_mean, u_se;     // per k: M x K, column i = E{u_ki}
    long trials = 0;
};

// Sample-average oracle for every expectation in the UatF SINR with MR
// combining v_mk = ohat_mk. Each trial draws channels, theta, pilot EMI
// (one N-vector per pilot symbol, shared by all APs), AP noise, a fresh
// data-phase EMI vector, and runs the MMSE estimator. With
// `full_emi_matrix` the EMI term keeps its cross-AP entries.
UatfEstimate estimate_uatf_terms(const OracleInputs &in, const RunOptions &opt, bool full_emi_matrix = false);

RVec sinr_from_estimates(const UatfEstimate &est, const std::vector<CVec> &a, const RVec &p, double noise_power);

} // namespace riscf

#endif
