// SPDX-License-Identifier: Apache-2.0
//
// riscf: uplink simulator for RIS-aided cell-free massive MIMO under
// electromagnetic interference.
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

#ifndef RISCF_TYPES_HPP
#define RISCF_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace riscf {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr cplx kJ{0.0, 1.0};

// Base error for every contract violation raised by the library. The
// `code` is a short machine-readable tag used by the CLI error JSON.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string &what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string &code() const noexcept { return code_; }

  private:
    std::string code_;
};

// Per-(AP, UE) storage, row-major over APs: index m * K + k.
template <typename T>
class ApUeTable {
  public:
    ApUeTable() = default;
    ApUeTable(std::size_t aps, std::size_t ues, const T &init = T{})
        : aps_(aps), ues_(ues), data_(aps * ues, init) {}

    T &operator()(std::size_t m, std::size_t k) { return data_[m * ues_ + k]; }
    const T &operator()(std::size_t m, std::size_t k) const { return data_[m * ues_ + k]; }

    std::size_t aps() const noexcept { return aps_; }
    std::size_t ues() const noexcept { return ues_; }

  private:
    std::size_t aps_ = 0;
    std::size_t ues_ = 0;
    std::vector<T> data_;
};

} // namespace riscf

#endif
