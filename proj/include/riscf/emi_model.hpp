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

#ifndef RISCF_EMI_MODEL_HPP
#define RISCF_EMI_MODEL_HPP

#include "riscf/random.hpp"
#include "riscf/spatial_correlation.hpp"

namespace riscf {

// EMI power at the RIS from the signal-to-EMI ratio:
//   sigma_r^2 = p_max * sum(beta_m) / (M * rho).
// rho_db = +inf gives 0 (no EMI).
double sigma_r2_from_rho(double rho_db, double p_max, const RVec &beta_m);

// Effective EMI covariance seen at AP m through its RIS link:
//   R_mm = sigma_r^2 A_r (Hbar^H Phi R Phi^H Hbar) + Q_m,
//   [Q_m]_{l,l'} = sigma_r^2 A_r tr(Phi R Phi^H [Rtilde_m]_{l',l}).
struct EmiNoiseCovariance {
    std::vector<CMat> R_mm;
    std::vector<CMat> Q_m;
};

CMat emi_noise_covariance(const CMat &Hbar, const CVec &phi, const RMat &R, const CMat &Rtilde_m, double sigma_r2,
                          double area, CMat *Q_out = nullptr);

EmiNoiseCovariance emi_noise_covariance(const SpatialModel &model, double sigma_r2);

// Covariance of the projected pilot-phase noise: tau_p R_mm + tau_p sigma^2 I.
CMat pilot_noise_covariance(const CMat &R_mm, int tau_p, double noise_power);

// i.i.d. CN(0, A_r sigma_r^2 R) draws, one column per symbol.
class EmiSampler {
  public:
    EmiSampler(const RMat &R, double sigma_r2, double area);

    CMat draw(RandomStream &rng, int count) const;
    bool active() const noexcept { return active_; }

  private:
    CMat factor_;
    bool active_ = false;
};

CMat sample_emi(const RMat &R, double sigma_r2, double area, int count, RandomStream &rng);

} // namespace riscf

#endif
