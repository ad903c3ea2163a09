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

#ifndef RISCF_RANDOM_HPP
#define RISCF_RANDOM_HPP

#include "riscf/types.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>

namespace riscf {

// Stream tags keep substreams of one master seed disjoint by purpose.
enum class StreamTag : std::uint64_t {
    scenario = 1,
    channel = 2,
    monte_carlo = 3,
    experiment = 4,
    test = 99,
};

// Deterministic 64-bit mixing of a seed with a path of indices.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

// Owned random stream. Not thread-safe; hand each task its own stream
// derived with `substream`.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    RandomStream substream(std::initializer_list<std::uint64_t> path) const {
        return RandomStream(derive_seed(seed_, path));
    }

    std::uint64_t seed() const noexcept { return seed_; }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    double normal() { return normal_(engine_); }

    // Circularly-symmetric CN(0, 1): real and imaginary parts N(0, 1/2).
    cplx complex_normal();
    CVec complex_normal(Eigen::Index n);
    RVec normal(Eigen::Index n);

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace riscf

#endif
