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

#ifndef RISCF_LINALG_HPP
#define RISCF_LINALG_HPP

#include "riscf/types.hpp"

namespace riscf::linalg {

// Relative eigenvalue floor used when factorizing covariance matrices.
// Eigenvalues in [-kPsdClip * lambda_max, 0) are treated as roundoff and
// clipped to zero; anything more negative is a hard error.
inline constexpr double kPsdClip = 1e-12;

// Symmetric square-root factor F with F * F^H == C (up to clipping).
// Works for real-symmetric input as well (imaginary part zero).
CMat psd_factor(const CMat &cov, const char *what = "covariance");
RMat psd_factor(const RMat &cov, const char *what = "covariance");

// Nearest PSD matrix with the original diagonal: negative eigenvalues are
// set to zero, then rows/columns are rescaled so diag is restored. For
// covariances built from kernels that are not PSD on every geometry.
RMat regularize_psd(const RMat &cov);

// Hermitian part (C + C^H) / 2.
CMat hermitian_part(const CMat &m);

// max |C - C^H| / max(|C|, tiny).
double hermitian_residual(const CMat &m);

// Smallest and largest eigenvalue of the Hermitian part.
double min_eigenvalue(const CMat &m);
double max_eigenvalue(const CMat &m);

// Block (l, lp) of size n x n from an (L n) x (L n) matrix; 0-based indices.
// This is the [X]_{(lN-N+1 ~ lN, l'N-N+1 ~ l'N)} block of the one-based
// notation, i.e. rows l*n .. l*n+n-1 and columns lp*n .. lp*n+n-1.
Eigen::Block<const CMat> block(const CMat &m, Eigen::Index l, Eigen::Index lp, Eigen::Index n);

// L x L matrix E{Y^H A Y} for an N x L random matrix Y whose column-wise
// vectorization has covariance X ((L N) x (L N), split into N x N blocks):
// entry (l, l') = tr(A * X_{l', l}).
CMat block_trace_matrix(const CMat &a, const CMat &x, Eigen::Index blocks);

// Hermitian positive definite solve; throws when the condition estimate
// exceeds `max_condition`.
CMat hpd_solve(const CMat &a, const CMat &b, double max_condition = 1e12, const char *what = "matrix");
CVec hpd_solve(const CMat &a, const CVec &b, double max_condition = 1e12, const char *what = "matrix");

// Real part of a scalar that is mathematically real; throws when the
// imaginary residue exceeds `rel_tol` times max(|z|, scale).
double real_checked(cplx z, double scale, const char *what, double rel_tol = 1e-9);

} // namespace riscf::linalg

#endif
