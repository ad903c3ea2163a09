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

#include "riscf/random.hpp"

#include <cmath>

namespace riscf {

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = mix(seed);
    for (auto p : path) {
        h = mix(h ^ mix(p + 0x632be59bd9b4e019ULL));
    }
    return h;
}

cplx RandomStream::complex_normal() {
    static const double s = std::sqrt(0.5);
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {s * re, s * im};
}

CVec RandomStream::complex_normal(Eigen::Index n) {
    CVec v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = complex_normal();
    }
    return v;
}

RVec RandomStream::normal(Eigen::Index n) {
    RVec v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = normal_(engine_);
    }
    return v;
}

} // namespace riscf
