// SPDX-License-Identifier: Apache-2.0
//
// nafd-lab: hybrid MIMO processing and multi-agent power allocation
// for network-assisted full-duplex cell-free mmWave networks
// Copyright (C) 2026 The nafd-lab authors
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

#include "nafd/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nafd/errors.hpp"

namespace nafd
{

namespace
{
void require_positive_noise(double sigma2, const char *where)
{
    if (!(sigma2 > 0.0))
        throw std::domain_error(std::string(where) + ": noise variance must be positive");
}

int admissible_count(const RVec &eigvals, double rank_tol)
{
    if (eigvals.size() == 0 || !(eigvals(0) > 0.0))
        return 0;
    const double floor = rank_tol * eigvals(0);
    int count = 0;
    for (Eigen::Index i = 0; i < eigvals.size(); ++i)
        if (eigvals(i) > floor)
            ++count;
    return count;
}

int square_root_exact(Eigen::Index v, const char *where)
{
    const auto r = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v))));
    if (r * r != v)
        throw std::invalid_argument(std::string(where) + ": dimension is not a perfect square");
    return static_cast<int>(r);
}

CMat coupling_from_allocation(const CMat &eigvecs, const RVec &sigma_a, int n_rf)
{
    const Eigen::Index rows = static_cast<Eigen::Index>(n_rf) * n_rf;
    CMat A = CMat::Zero(rows, eigvecs.rows());
    const Eigen::Index k = std::min<Eigen::Index>(rows, eigvecs.cols());
    for (Eigen::Index i = 0; i < k; ++i)
        A.row(i) = sigma_a(i) * eigvecs.col(i).adjoint();
    return A;
}
} // namespace

RVec waterfill(const RVec &eigvals, double rho, double sigma2, double budget, int slots, double rank_tol)
{
    require_positive_noise(sigma2, "waterfill");
    if (!(rho > 0.0) || !(budget > 0.0) || slots < 1)
        throw std::invalid_argument("waterfill: rho, budget and slots must be positive");
    for (Eigen::Index i = 1; i < eigvals.size(); ++i)
        if (eigvals(i) > eigvals(i - 1))
            throw std::invalid_argument("waterfill: eigenvalues must be sorted descending");

    int active = std::min(admissible_count(eigvals, rank_tol), slots);
    if (active == 0)
        throw NoSignalDirection("waterfill: no eigenvalue above the rank tolerance");

    const double snr = rho / sigma2;
    RVec x = RVec::Zero(eigvals.size());
    while (active > 0)
    {
        double sum_y = 0.0;
        for (int i = 0; i < active; ++i)
            sum_y += 1.0 / eigvals(i);
        const double level = (snr * budget + sum_y) / active;
        if (level - 1.0 / eigvals(active - 1) >= 0.0)
        {
            for (int i = 0; i < active; ++i)
                x(i) = (level - 1.0 / eigvals(i)) / snr;
            return x;
        }
        --active;
    }
    throw NoSignalDirection("waterfill: empty active set");
}

double waterfill_objective(const RVec &eigvals, const RVec &x, double rho, double sigma2, double rank_tol)
{
    const int count = admissible_count(eigvals, rank_tol);
    double obj = 0.0;
    for (int i = 0; i < count; ++i)
        obj += 1.0 / (1.0 / eigvals(i) + rho / sigma2 * x(i));
    return obj;
}

CMat vanloan_rearrange(const CMat &A, int rb, int cb, int rc, int cc)
{
    if (A.rows() != static_cast<Eigen::Index>(rb) * rc || A.cols() != static_cast<Eigen::Index>(cb) * cc)
        throw std::invalid_argument("vanloan_rearrange: A does not factor into the given block shapes");
    CMat At(static_cast<Eigen::Index>(rb) * cb, static_cast<Eigen::Index>(rc) * cc);
    for (int j1 = 0; j1 < cb; ++j1)
        for (int i1 = 0; i1 < rb; ++i1)
            for (int j2 = 0; j2 < cc; ++j2)
                for (int i2 = 0; i2 < rc; ++i2)
                    At(i1 + j1 * rb, i2 + j2 * rc) = A(i1 * rc + i2, j1 * cc + j2);
    return At;
}

CMat kron_coupling(const CMat &W, const CMat &U)
{
    return kron(W.transpose(), U.adjoint());
}

KronFactors kron_factorize(const CMat &A, int n, int n_rf)
{
    const CMat At = vanloan_rearrange(A, n_rf, n, n_rf, n);
    Eigen::BDCSVD<CMat> svd(At, Eigen::ComputeThinU | Eigen::ComputeThinV);
    KronFactors out;
    out.singular = svd.singularValues();
    const double s1 = out.singular(0);
    const CVec vec_b = std::sqrt(s1) * svd.matrixU().col(0);
    const CVec vec_c = std::sqrt(s1) * svd.matrixV().col(0).conjugate();
    const CMat B = unvec(vec_b, n_rf, n); // W^T
    const CMat C = unvec(vec_c, n_rf, n); // U^H
    out.W = B.transpose();
    out.U = C.adjoint();
    out.residual = (A - kron(B, C)).norm();
    return out;
}

CouplingDesign optimal_coupling(const CMat &R_ap, double rho, double sigma2, int n_rf, bool factorize)
{
    const int n = square_root_exact(R_ap.rows(), "optimal_coupling");
    if (n_rf < 1 || n_rf > n)
        throw std::invalid_argument("optimal_coupling: n_rf must lie in [1, n]");
    Eigen::SelfAdjointEigenSolver<CMat> eig(hermitian_part(R_ap));
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("optimal_coupling: eigendecomposition failed");

    CouplingDesign d;
    d.eigvals = eig.eigenvalues().reverse().cwiseMax(0.0);
    d.eigvecs = eig.eigenvectors().rowwise().reverse();
    d.x = waterfill(d.eigvals, rho, sigma2, static_cast<double>(n_rf) * n_rf, n_rf * n_rf);
    d.sigma_a = d.x.cwiseSqrt();
    d.A = coupling_from_allocation(d.eigvecs, d.sigma_a, n_rf);
    if (factorize)
        d.rf = kron_factorize(d.A, n, n_rf);
    return d;
}

CouplingDesign optimal_coupling_lowrank(const CMat &F, double rho, double sigma2, int n_rf, bool factorize)
{
    const int n = square_root_exact(F.rows(), "optimal_coupling_lowrank");
    if (n_rf < 1 || n_rf > n)
        throw std::invalid_argument("optimal_coupling_lowrank: n_rf must lie in [1, n]");
    const CMat gram = F.adjoint() * F;
    Eigen::SelfAdjointEigenSolver<CMat> eig(hermitian_part(gram));
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("optimal_coupling_lowrank: eigendecomposition failed");

    CouplingDesign d;
    d.eigvals = eig.eigenvalues().reverse().cwiseMax(0.0);
    const CMat V = eig.eigenvectors().rowwise().reverse();
    const int count = admissible_count(d.eigvals, kRankTolerance);
    d.eigvecs = CMat::Zero(F.rows(), d.eigvals.size());
    for (int i = 0; i < count; ++i)
        d.eigvecs.col(i) = F * V.col(i) / std::sqrt(d.eigvals(i));
    d.x = waterfill(d.eigvals, rho, sigma2, static_cast<double>(n_rf) * n_rf, n_rf * n_rf);
    d.sigma_a = d.x.cwiseSqrt();
    d.A = coupling_from_allocation(d.eigvecs, d.sigma_a, n_rf);
    if (factorize)
        d.rf = kron_factorize(d.A, n, n_rf);
    return d;
}

CMat simulate_interap_pilot(const CMat &H, const CMat &W, const CMat &U, double rho, double sigma2, Rng &rng)
{
    if (H.rows() != U.rows() || H.cols() != W.rows())
        throw std::invalid_argument("simulate_interap_pilot: shape mismatch");
    CMat Y = std::sqrt(rho) * (U.adjoint() * H * W);
    Y += complex_normal_matrix(rng, Y.rows(), Y.cols(), sigma2);
    return Y;
}

CVec simulate_coupled_pilot(const CMat &H, const CMat &A, double rho, double sigma2, Rng &rng)
{
    if (A.cols() != H.size())
        throw std::invalid_argument("simulate_coupled_pilot: shape mismatch");
    CVec y = std::sqrt(rho) * (A * vec(H));
    y += complex_normal_vector(rng, y.size(), sigma2);
    return y;
}

CMat InterApEstimator::estimate(const CVec &y) const
{
    if (y.size() != gain.cols())
        throw std::invalid_argument("InterApEstimator: observation length mismatch");
    return unvec(gain * y, n, n);
}

InterApEstimator make_interap_estimator(const CMat &R_ap, const CMat &A, double rho, double sigma2)
{
    require_positive_noise(sigma2, "mmse_interap");
    if (A.cols() != R_ap.rows() || R_ap.rows() != R_ap.cols())
        throw std::invalid_argument("mmse_interap: shape mismatch");
    const CMat AR = A * R_ap;
    CMat S = rho * AR * A.adjoint();
    S.diagonal().array() += sigma2;
    Eigen::LLT<CMat> llt(hermitian_part(S));
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("mmse_interap: observation covariance is not positive definite");
    const CMat S_inv_AR = llt.solve(AR);

    InterApEstimator e;
    e.n = square_root_exact(R_ap.rows(), "mmse_interap");
    e.gain = std::sqrt(rho) * S_inv_AR.adjoint();
    e.C = hermitian_part(R_ap - rho * AR.adjoint() * S_inv_AR);
    e.trace_C = e.C.trace().real();
    return e;
}

InterApEstimator make_interap_estimator_lowrank(const CMat &F, const CMat &A, double rho, double sigma2,
                                                bool dense_covariance)
{
    require_positive_noise(sigma2, "mmse_interap");
    if (A.cols() != F.rows())
        throw std::invalid_argument("mmse_interap: shape mismatch");
    const CMat M = A * F;
    CMat K = rho * M.adjoint() * M;
    K.diagonal().array() += sigma2;
    Eigen::LLT<CMat> llt(hermitian_part(K));
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("mmse_interap: reduced system is not positive definite");

    InterApEstimator e;
    e.n = square_root_exact(F.rows(), "mmse_interap");
    e.gain = std::sqrt(rho) * F * llt.solve(M.adjoint());
    const CMat core = sigma2 * llt.solve(CMat::Identity(K.rows(), K.cols()));
    e.trace_C = (core * F.adjoint() * F).trace().real();
    if (dense_covariance)
        e.C = hermitian_part(F * core * F.adjoint());
    return e;
}

InterApEstimate mmse_interap(const CVec &y, const CMat &R_ap, const CMat &A, double rho, double sigma2)
{
    InterApEstimator e = make_interap_estimator(R_ap, A, rho, sigma2);
    return {e.estimate(y), std::move(e.C)};
}

InterApEstimate mmse_interap(const CMat &Y_tilde, const CMat &R_ap, const CMat &A, double rho, double sigma2)
{
    return mmse_interap(CVec(vec(Y_tilde)), R_ap, A, rho, sigma2);
}

CMat equivalent_covariance(const CMat &analog, const CMat &R_link)
{
    if (analog.rows() != R_link.rows() || R_link.rows() != R_link.cols())
        throw std::invalid_argument("equivalent_covariance: shape mismatch");
    return hermitian_part(analog.adjoint() * R_link * analog);
}

CMat make_pilots(int tau, int users)
{
    if (users < 1)
        throw std::invalid_argument("make_pilots: need at least one user");
    if (tau < users)
        throw ContaminationUnsupported("make_pilots: pilot length shorter than user count");
    return CMat::Identity(tau, users);
}

namespace
{
void check_pilots(const CMat &pilots, std::size_t users)
{
    if (pilots.rows() < static_cast<Eigen::Index>(users))
        throw ContaminationUnsupported("pilot length shorter than user count");
    if (pilots.cols() != static_cast<Eigen::Index>(users))
        throw std::invalid_argument("pilot count does not match user count");
    const CMat gram = pilots.adjoint() * pilots;
    if ((gram - CMat::Identity(gram.rows(), gram.cols())).norm() > 1e-10)
        throw std::invalid_argument("pilot sequences are not orthonormal");
}
} // namespace

CMat simulate_user_pilot(const std::vector<CVec> &links, const CMat &analog, const CMat &pilots, double rho,
                         double sigma2, Rng &rng)
{
    check_pilots(pilots, links.size());
    CMat Y = CMat::Zero(analog.cols(), pilots.rows());
    const double a = std::sqrt(rho);
    for (std::size_t u = 0; u < links.size(); ++u)
        Y += a * (analog.adjoint() * links[u]) * pilots.col(static_cast<Eigen::Index>(u)).transpose();
    Y += complex_normal_matrix(rng, Y.rows(), Y.cols(), sigma2);
    return Y;
}

EquivalentEstimator make_equivalent_estimator(const CMat &pilots, int user, const std::vector<CMat> &R_eq_all,
                                              double rho, double sigma2)
{
    require_positive_noise(sigma2, "mmse_equivalent");
    check_pilots(pilots, R_eq_all.size());
    if (user < 0 || user >= static_cast<int>(R_eq_all.size()))
        throw std::invalid_argument("mmse_equivalent: user index out of range");
    const CMat &R = R_eq_all[static_cast<std::size_t>(user)];
    const auto phi_u = pilots.col(user);
    CMat Q = CMat::Zero(R.rows(), R.cols());
    for (std::size_t v = 0; v < R_eq_all.size(); ++v)
    {
        const double overlap = std::norm(pilots.col(static_cast<Eigen::Index>(v)).dot(phi_u));
        Q += rho * overlap * R_eq_all[v];
    }
    Q.diagonal().array() += sigma2;
    Eigen::LLT<CMat> llt(hermitian_part(Q));
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("mmse_equivalent: Q is not positive definite");

    EquivalentEstimator e;
    const CMat Qinv_R = llt.solve(R.adjoint()); // Q^{-1} R^H
    e.gain = std::sqrt(rho) * Qinv_R.adjoint();  // R Q^{-1}
    e.R_eq = R;
    e.R_hat = hermitian_part(rho * R * Qinv_R);
    e.R_tilde = hermitian_part(R - e.R_hat);
    return e;
}

EquivalentEstimate mmse_equivalent(const CMat &Y, const CMat &pilots, int user, const std::vector<CMat> &R_eq_all,
                                   double rho, double sigma2)
{
    const EquivalentEstimator e = make_equivalent_estimator(pilots, user, R_eq_all, rho, sigma2);
    if (Y.cols() != pilots.rows() || Y.rows() != e.gain.cols())
        throw std::invalid_argument("mmse_equivalent: observation shape mismatch");
    EquivalentEstimate out;
    out.est = e.gain * (Y * pilots.col(user).conjugate());
    out.R_eq = e.R_eq;
    out.R_hat = e.R_hat;
    out.R_tilde = e.R_tilde;
    return out;
}

double nmse(const CMat &est, const CMat &truth)
{
    if (est.rows() != truth.rows() || est.cols() != truth.cols())
        throw std::invalid_argument("nmse: shape mismatch");
    const double denom = truth.squaredNorm();
    if (!(denom > 0.0))
        throw std::domain_error("nmse: reference has zero energy");
    return (est - truth).squaredNorm() / denom;
}

} // namespace nafd
