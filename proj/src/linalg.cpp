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

#include "riscf/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace riscf::linalg {

namespace {

template <typename Mat>
Mat factor_impl(const Mat &cov, const char *what) {
    using Solver = Eigen::SelfAdjointEigenSolver<Mat>;
    if (cov.rows() != cov.cols()) {
        throw Error("dimension", std::string(what) + ": factorization of a non-square matrix");
    }
    if (cov.size() == 0) {
        return cov;
    }
    const double scale = cov.cwiseAbs().maxCoeff();
    if (scale == 0.0) {
        return Mat::Zero(cov.rows(), cov.cols());
    }
    const Mat herm = (cov + cov.adjoint()) / 2.0;
    Solver es(herm);
    if (es.info() != Eigen::Success) {
        throw Error("factorization", std::string(what) + ": eigendecomposition failed");
    }
    RVec ev = es.eigenvalues();
    const double top = std::max(ev.maxCoeff(), 0.0);
    const double floor = -kPsdClip * std::max(top, scale);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < floor) {
            std::ostringstream os;
            os << what << ": not positive semidefinite (eigenvalue " << ev(i) << ", largest " << top << ")";
            throw Error("not_psd", os.str());
        }
        ev(i) = std::sqrt(std::max(ev(i), 0.0));
    }
    return es.eigenvectors() * ev.asDiagonal();
}

} // namespace

CMat psd_factor(const CMat &cov, const char *what) { return factor_impl<CMat>(cov, what); }

RMat psd_factor(const RMat &cov, const char *what) { return factor_impl<RMat>(cov, what); }

RMat regularize_psd(const RMat &cov) {
    if (cov.rows() != cov.cols()) {
        throw Error("dimension", "regularize_psd: non-square matrix");
    }
    const RMat sym = (cov + cov.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<RMat> es(sym);
    if (es.info() != Eigen::Success) {
        throw Error("factorization", "regularize_psd: eigendecomposition failed");
    }
    if (es.eigenvalues().minCoeff() >= 0.0) {
        return sym;
    }
    const RVec ev = es.eigenvalues().cwiseMax(0.0);
    RMat out = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    RVec s(out.rows());
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        if (!(out(i, i) > 0.0)) {
            throw Error("not_psd", "regularize_psd: diagonal vanished after clipping");
        }
        s(i) = std::sqrt(sym(i, i) / out(i, i));
    }
    out = s.asDiagonal() * out * s.asDiagonal();
    return (out + out.transpose()) / 2.0;
}

CMat hermitian_part(const CMat &m) { return (m + m.adjoint()) / 2.0; }

double hermitian_residual(const CMat &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

double min_eigenvalue(const CMat &m) {
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const CMat &m) {
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

Eigen::Block<const CMat> block(const CMat &m, Eigen::Index l, Eigen::Index lp, Eigen::Index n) {
    return m.block(l * n, lp * n, n, n);
}

CMat block_trace_matrix(const CMat &a, const CMat &x, Eigen::Index blocks) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n || x.rows() != n * blocks || x.cols() != n * blocks) {
        throw Error("dimension", "block_trace_matrix: dimension mismatch");
    }
    CMat out(blocks, blocks);
    for (Eigen::Index l = 0; l < blocks; ++l) {
        for (Eigen::Index lp = 0; lp < blocks; ++lp) {
            // tr(A * B) = sum_ij A_ij B_ji
            out(l, lp) = (a.array() * block(x, lp, l, n).transpose().array()).sum();
        }
    }
    return out;
}

namespace {

// Jacobi-equilibrated Cholesky; the condition estimate is taken on the
// equilibrated matrix so that badly scaled but well-posed systems pass.
template <typename Rhs>
Rhs hpd_solve_impl(const CMat &a, const Rhs &b, double max_condition, const char *what) {
    if (a.rows() != a.cols() || a.rows() != b.rows()) {
        throw Error("dimension", std::string(what) + ": solve dimension mismatch");
    }
    const Eigen::Index n = a.rows();
    RVec d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double aii = a(i, i).real();
        if (!(aii > 0.0) || !std::isfinite(aii)) {
            throw Error("not_pd", std::string(what) + ": non-positive diagonal entry");
        }
        d(i) = 1.0 / std::sqrt(aii);
    }
    const CMat scaled = hermitian_part(d.asDiagonal() * a * d.asDiagonal());
    Eigen::SelfAdjointEigenSolver<CMat> es(scaled, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > max_condition) {
        std::ostringstream os;
        os << what << ": not positive definite or ill-conditioned (eigenvalues " << lo << " .. " << hi << ")";
        throw Error("not_pd", os.str());
    }
    Eigen::LLT<CMat> llt(scaled);
    if (llt.info() != Eigen::Success) {
        throw Error("not_pd", std::string(what) + ": Cholesky factorization failed");
    }
    const Rhs y = llt.solve(d.asDiagonal() * b);
    return d.asDiagonal() * y;
}

} // namespace

CMat hpd_solve(const CMat &a, const CMat &b, double max_condition, const char *what) {
    return hpd_solve_impl<CMat>(a, b, max_condition, what);
}

CVec hpd_solve(const CMat &a, const CVec &b, double max_condition, const char *what) {
    return hpd_solve_impl<CVec>(a, b, max_condition, what);
}

double real_checked(cplx z, double scale, const char *what, double rel_tol) {
    const double ref = std::max(std::abs(z), std::abs(scale));
    if (std::abs(z.imag()) > rel_tol * ref && ref > 0.0) {
        std::ostringstream os;
        os << what << ": expected a real value, imaginary residue " << z.imag() << " vs magnitude " << ref;
        throw Error("not_real", os.str());
    }
    return z.real();
}

} // namespace riscf::linalg
