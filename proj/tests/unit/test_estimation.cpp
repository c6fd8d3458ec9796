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

#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "nafd/channel.hpp"
#include "nafd/errors.hpp"
#include "nafd/estimation.hpp"
#include "simplex_oracle.hpp"

using namespace nafd;

namespace
{
RVec vec_of(std::initializer_list<double> v)
{
    RVec r(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v)
        r(i++) = x;
    return r;
}

CMat random_psd(Rng &rng, int n, int rank)
{
    const CMat X = complex_normal_matrix(rng, n, rank, 1.0);
    return X * X.adjoint();
}

double mse_of(const CMat &R, const CMat &A, double snr)
{
    const CMat M = R.inverse() + snr * A.adjoint() * A;
    return M.inverse().trace().real();
}
} // namespace

TEST_CASE("waterfill hand-solved instances")
{
    const RVec a = waterfill(vec_of({1.0, 1.0}), 1.0, 1.0, 1.0, 4);
    CHECK(a(0) == doctest::Approx(0.5));
    CHECK(a(1) == doctest::Approx(0.5));
    const RVec b = waterfill(vec_of({2.0, 1.0}), 1.0, 1.0, 1.0, 4);
    CHECK(b(0) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(b(1) == doctest::Approx(0.25).epsilon(1e-14));
    const RVec c = waterfill(vec_of({1.0, 1e-15}), 1.0, 1.0, 1.0, 4);
    CHECK(c(0) == doctest::Approx(1.0));
    CHECK(c(1) == 0.0);
    CHECK_THROWS_AS(waterfill(vec_of({0.0, 0.0}), 1.0, 1.0, 1.0, 4), NoSignalDirection);
    CHECK_THROWS_AS(waterfill(vec_of({1.0}), 1.0, 0.0, 1.0, 4), std::domain_error);
}

TEST_CASE("waterfill respects the slot cap")
{
    const RVec x = waterfill(vec_of({4.0, 3.0, 2.0, 1.0}), 2.0, 1.0, 3.0, 2);
    CHECK(x(2) == 0.0);
    CHECK(x(3) == 0.0);
    CHECK(x.sum() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("waterfill matches a simplex grid search")
{
    Rng rng(10);
    for (int inst = 0; inst < 20; ++inst)
    {
        RVec lam(4);
        for (auto &v : lam)
            v = uniform(rng, 0.05, 5.0);
        std::sort(lam.begin(), lam.end(), std::greater<>());
        const double snr = uniform(rng, 0.2, 10.0), budget = uniform(rng, 0.5, 4.0);
        const RVec x = waterfill(lam, snr, 1.0, budget, 4);
        const double best = waterfill_objective(lam, x, snr, 1.0);
        const auto search = nafd::testing::simplex_grid_search(
            [&](const RVec &g) { return waterfill_objective(lam, g, snr, 1.0); }, budget);
        CHECK(search.lattice_points == 969);
        CHECK(best <= search.lattice_best + 1e-12);
        CHECK(std::abs(search.refined_best - best) <= 1e-3);
        // KKT: uniform level on the active set, inactive directions above it.
        double level = -1.0;
        for (Eigen::Index k = 0; k < 4; ++k)
            if (x(k) > 0.0)
            {
                const double l = 1.0 / lam(k) + snr * x(k);
                if (level < 0.0)
                    level = l;
                CHECK(std::abs(l - level) <= 1e-9 * level);
            }
        for (Eigen::Index k = 0; k < 4; ++k)
            if (x(k) == 0.0)
                CHECK(1.0 / lam(k) >= level - 1e-9);
    }
}

TEST_CASE("optimal coupling on an identity covariance")
{
    const int n = 3, n_rf = 2;
    const CMat R = CMat::Identity(n * n, n * n);
    const CouplingDesign d = optimal_coupling(R, 1.0, 1.0, n_rf, false);
    CHECK(d.A.rows() == 4);
    CHECK(d.A.cols() == 9);
    for (int i = 0; i < 4; ++i)
        CHECK(d.x(i) == doctest::Approx(1.0).epsilon(1e-12));
    for (Eigen::Index i = 4; i < d.x.size(); ++i)
        CHECK(d.x(i) == 0.0);
    CHECK(std::abs((d.A * d.A.adjoint()).trace().real() - 4.0) < 1e-9);
}

TEST_CASE("optimal coupling beats random feasible couplings")
{
    Rng rng(11);
    const int n = 3, n_rf = 2;
    const CMat R = random_psd(rng, n * n, n * n) + 0.1 * CMat::Identity(n * n, n * n);
    const double snr = 3.0;
    const CouplingDesign d = optimal_coupling(R, snr, 1.0, n_rf, false);
    CHECK(std::abs((d.A * d.A.adjoint()).trace().real() - n_rf * n_rf) < 1e-9);
    const double best = mse_of(R, d.A, snr);
    for (int t = 0; t < 100; ++t)
    {
        CMat B = complex_normal_matrix(rng, n_rf * n_rf, n * n, 1.0);
        B *= std::sqrt(n_rf * n_rf / B.squaredNorm());
        CHECK(best <= mse_of(R, B, snr) + 1e-12);
    }
}

TEST_CASE("low-rank coupling agrees with the dense design")
{
    Rng rng(12);
    const int n = 4, n_rf = 2;
    const InterApAngles ang = sample_interap_channel(1.0, 3, n, rng).angles;
    const CMat F = interap_covariance_factor(ang, 0.5, n);
    const CMat R = F * F.adjoint();
    const CouplingDesign dense = optimal_coupling(R, 2.0, 1.0, n_rf, false);
    const CouplingDesign low = optimal_coupling_lowrank(F, 2.0, 1.0, n_rf, false);
    CHECK((dense.A.adjoint() * dense.A - low.A.adjoint() * low.A).norm() < 1e-9);
}

TEST_CASE("Van Loan rearrangement identities")
{
    Rng rng(13);
    const int n = 4, n_rf = 2;
    const CMat B = complex_normal_matrix(rng, n_rf, n, 1.0);
    const CMat C = complex_normal_matrix(rng, n_rf, n, 1.0);
    const CMat K = kron(B, C);
    const CMat Kt = vanloan_rearrange(K, n_rf, n, n_rf, n);
    Eigen::JacobiSVD<CMat> svd(Kt);
    CHECK(svd.singularValues()(1) < 1e-12 * svd.singularValues()(0));
    CHECK(std::abs(Kt.norm() - K.norm()) < 1e-12 * K.norm());

    const CMat A = complex_normal_matrix(rng, n_rf * n_rf, n * n, 1.0);
    const CMat At = vanloan_rearrange(A, n_rf, n, n_rf, n);
    for (int t = 0; t < 20; ++t)
    {
        const CMat Bt = complex_normal_matrix(rng, n_rf, n, 1.0);
        const CMat Ct = complex_normal_matrix(rng, n_rf, n, 1.0);
        const double lhs = (A - kron(Bt, Ct)).norm();
        const double rhs = (At - vec(Bt) * vec(Ct).transpose()).norm();
        CHECK(std::abs(lhs - rhs) < 1e-12 * lhs);
    }
    CHECK_THROWS_AS(vanloan_rearrange(A, 3, n, n_rf, n), std::invalid_argument);
}

TEST_CASE("Kronecker factorization: exact inputs and Eckart-Young residual")
{
    Rng rng(14);
    const int n = 5, n_rf = 3;
    const CMat W = complex_normal_matrix(rng, n, n_rf, 1.0);
    const CMat U = complex_normal_matrix(rng, n, n_rf, 1.0);
    const CMat A = kron_coupling(W, U);
    const KronFactors kf = kron_factorize(A, n, n_rf);
    CHECK((kron_coupling(kf.W, kf.U) - A).norm() <= 1e-10 * A.norm());
    CHECK(kf.residual <= 1e-10 * A.norm());

    const CMat G = complex_normal_matrix(rng, n_rf * n_rf, n * n, 1.0);
    const KronFactors kg = kron_factorize(G, n, n_rf);
    const double tail = std::sqrt(kg.singular.squaredNorm() - kg.singular(0) * kg.singular(0));
    CHECK(std::abs(kg.residual - tail) <= 1e-10 * G.norm());
    CHECK(std::abs((G - kron_coupling(kg.W, kg.U)).norm() - kg.residual) <= 1e-10 * G.norm());
    for (int t = 0; t < 100; ++t)
    {
        const CMat K = kron_coupling(complex_normal_matrix(rng, n, n_rf, 1.0), complex_normal_matrix(rng, n, n_rf, 1.0));
        const cd proj = (K.adjoint() * G).trace() / K.squaredNorm();
        CHECK(kg.residual <= (G - proj * K).norm() + 1e-12);
    }
}

TEST_CASE("inter-AP pilot simulation")
{
    Rng rng(15);
    const int n = 4, n_rf = 2;
    const CMat H = complex_normal_matrix(rng, n, n, 1.0);
    const CMat W = complex_normal_matrix(rng, n, n_rf, 1.0);
    const CMat U = complex_normal_matrix(rng, n, n_rf, 1.0);
    const CMat Y = simulate_interap_pilot(H, W, U, 2.0, 0.0, rng);
    CHECK((Y - std::sqrt(2.0) * U.adjoint() * H * W).norm() < 1e-12);
    CHECK((vec(Y) - std::sqrt(2.0) * kron_coupling(W, U) * vec(H)).norm() < 1e-12);
    double s2 = 0.0;
    const int reps = 25000;
    for (int r = 0; r < reps; ++r)
        s2 += simulate_interap_pilot(H, W, U, 0.0, 0.7, rng).squaredNorm();
    CHECK(std::abs(s2 / (reps * 4.0) - 0.7) / 0.7 < 0.03);
}

TEST_CASE("interAP MMSE limits and textbook reduction")
{
    Rng rng(16);
    const int n = 3;
    const InterApAngles ang = sample_interap_channel(1.0, 3, n, rng).angles;
    const CMat R = interap_covariance(ang, 1.0, n);
    const CMat I = CMat::Identity(n * n, n * n);
    const CMat H = sample_interap_given_angles(1.0, ang, n, rng);
    const CVec y = simulate_coupled_pilot(H, I, 1e-12, 1.0, rng);
    const InterApEstimate e0 = mmse_interap(y, R, I, 1e-12, 1.0);
    CHECK(e0.H_hat.norm() < 1e-5);
    CHECK((e0.C - R).norm() < 1e-9);

    const double rho = 3.0, s2 = 0.5;
    const CVec y1 = simulate_coupled_pilot(H, I, rho, s2, rng);
    const InterApEstimate e1 = mmse_interap(y1, R, I, rho, s2);
    const CMat textbook = std::sqrt(rho) * R * (rho * R + s2 * I).inverse();
    CHECK((vec(e1.H_hat) - textbook * y1).norm() < 1e-10);
    CHECK((e1.C - e1.C.adjoint()).norm() < 1e-12);
    CHECK(e1.C.trace().real() <= R.trace().real() + 1e-12);
    CHECK_THROWS_AS(mmse_interap(y1, R, I, rho, 0.0), std::domain_error);
}

TEST_CASE("interAP error covariance shrinks with pilot power")
{
    Rng rng(17);
    const int n = 4, n_rf = 2;
    const InterApAngles ang = sample_interap_channel(1.0, 3, n, rng).angles;
    const CMat R = interap_covariance(ang, 1.0, n);
    double prev = 1e300;
    for (double rho : {0.01, 0.1, 1.0, 10.0, 100.0})
    {
        const CouplingDesign d = optimal_coupling(R, rho, 1.0, n_rf, false);
        const InterApEstimator est = make_interap_estimator(R, d.A, rho, 1.0);
        Eigen::SelfAdjointEigenSolver<CMat> es(est.C);
        CHECK(es.eigenvalues().minCoeff() > -1e-10);
        CHECK(est.trace_C <= prev + 1e-12);
        prev = est.trace_C;
    }
}

TEST_CASE("interAP MMSE Monte Carlo consistency and orthogonality")
{
    Rng rng(18);
    const int n = 4, n_rf = 2, trials = 2000;
    const double rho = 5.0, s2 = 1.0;
    const InterApAngles ang = sample_interap_channel(1.0, 3, n, rng).angles;
    const CMat R = interap_covariance(ang, 1.0, n);
    const CouplingDesign d = optimal_coupling(R, rho, s2, n_rf, false);
    const InterApEstimator est = make_interap_estimator(R, d.A, rho, s2);
    double mse = 0.0, mse2 = 0.0;
    CMat cross = CMat::Zero(n * n, n * n);
    CMat cross2 = CMat::Zero(n * n, n * n);
    for (int t = 0; t < trials; ++t)
    {
        const CMat H = sample_interap_given_angles(1.0, ang, n, rng);
        const CMat Hh = est.estimate(simulate_coupled_pilot(H, d.A, rho, s2, rng));
        const CVec e = vec(H - Hh);
        const double q = e.squaredNorm();
        mse += q;
        mse2 += q * q;
        const CMat c = vec(Hh) * e.adjoint();
        cross += c;
        cross2 += c.cwiseAbs2();
    }
    mse /= trials;
    CHECK(std::abs(mse - est.trace_C) / est.trace_C < 0.03 + 3.0 * std::sqrt((mse2 / trials - mse * mse) / trials) / est.trace_C);
    cross /= trials;
    const RMat band = ((cross2.real() / trials - cross.cwiseAbs2()) / trials).cwiseSqrt() * 5.0;
    for (Eigen::Index i = 0; i < cross.rows(); ++i)
        for (Eigen::Index j = 0; j < cross.cols(); ++j)
            CHECK(std::abs(cross(i, j)) <= band(i, j) + 1e-12);
}

TEST_CASE("equivalent covariance congruence")
{
    Rng rng(19);
    const int n = 5;
    const CMat R = random_psd(rng, n, 3);
    const CMat sel = CMat::Identity(n, 2);
    CHECK((equivalent_covariance(sel, R) - R.topLeftCorner(2, 2)).norm() < 1e-14);
    for (int t = 0; t < 100; ++t)
    {
        const CMat Rt = random_psd(rng, n, 1 + t % n);
        CMat W(n, 2);
        for (Eigen::Index i = 0; i < W.size(); ++i)
            W(i) = std::polar(1.0, uniform(rng, -kPi, kPi));
        const CMat Re = equivalent_covariance(W, Rt);
        Eigen::SelfAdjointEigenSolver<CMat> es(Re);
        CHECK(es.eigenvalues().minCoeff() > -1e-9 * Rt.norm());
        CHECK(Re.trace().real() <= n * 2 * Rt.trace().real() + 1e-9);
    }
}

TEST_CASE("user pilot simulation")
{
    Rng rng(20);
    const int n = 4;
    const CMat analog = CMat::Identity(n, 2);
    const CVec h1 = complex_normal_vector(rng, n, 1.0), h2 = complex_normal_vector(rng, n, 1.0);
    const CMat P1 = make_pilots(3, 1);
    const CMat Y1 = simulate_user_pilot({h1}, analog, P1, 4.0, 0.0, rng);
    CHECK((Y1.col(0) - 2.0 * analog.adjoint() * h1).norm() < 1e-14);
    CHECK(Y1.rightCols(2).norm() == 0.0);
    const CMat P2 = make_pilots(2, 2);
    const CMat Y2 = simulate_user_pilot({h1, h2}, analog, P2, 4.0, 0.0, rng);
    CHECK((Y2 * P2.col(0).conjugate() - 2.0 * analog.adjoint() * h1).norm() < 1e-12);
    CHECK_THROWS_AS(make_pilots(1, 2), ContaminationUnsupported);
    CMat bad = CMat::Ones(2, 2);
    CHECK_THROWS_AS(simulate_user_pilot({h1, h2}, analog, bad, 1.0, 1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(simulate_user_pilot({h1, h2, h1}, analog, P2, 1.0, 1.0, rng), ContaminationUnsupported);
}

TEST_CASE("equivalent-channel MMSE")
{
    Rng rng(21);
    const int n_rf = 3, users = 2;
    std::vector<CMat> Rs{random_psd(rng, n_rf, n_rf) + 0.2 * CMat::Identity(n_rf, n_rf),
                         random_psd(rng, n_rf, n_rf) + 0.2 * CMat::Identity(n_rf, n_rf)};
    const CMat P = make_pilots(users, users);
    Eigen::LLT<CMat> l0(Rs[0]), l1(Rs[1]);
    const CVec h0 = l0.matrixL() * complex_normal_vector(rng, n_rf, 1.0);
    const CVec h1 = l1.matrixL() * complex_normal_vector(rng, n_rf, 1.0);
    const CMat I = CMat::Identity(n_rf, n_rf);
    const CMat Y = simulate_user_pilot({h0, h1}, I, P, 1.0, 1e-14, rng);
    const EquivalentEstimate e = mmse_equivalent(Y, P, 0, Rs, 1.0, 1e-14);
    CHECK((e.est - h0).norm() < 1e-6);
    CHECK((e.R_hat + e.R_tilde - e.R_eq).norm() <= 1e-10 * e.R_eq.norm());
    CHECK_THROWS_AS(mmse_equivalent(Y, P, 0, Rs, 1.0, 0.0), std::domain_error);

    const double rho = 2.0, s2 = 1.0;
    const int trials = 20000;
    CMat S = CMat::Zero(n_rf, n_rf);
    const EquivalentEstimator est = make_equivalent_estimator(P, 1, Rs, rho, s2);
    for (int t = 0; t < trials; ++t)
    {
        const CVec a = l0.matrixL() * complex_normal_vector(rng, n_rf, 1.0);
        const CVec b = l1.matrixL() * complex_normal_vector(rng, n_rf, 1.0);
        const CMat Yt = simulate_user_pilot({a, b}, I, P, rho, s2, rng);
        const CVec err = b - est.gain * (Yt * P.col(1).conjugate());
        S += err * err.adjoint();
    }
    S /= trials;
    CHECK((S - est.R_tilde).norm() / est.R_tilde.norm() < 0.05);
}

TEST_CASE("nmse identities")
{
    Rng rng(22);
    const CMat T = complex_normal_matrix(rng, 3, 3, 1.0);
    CHECK(nmse(T, T) == 0.0);
    CHECK(nmse(CMat::Zero(3, 3), T) == doctest::Approx(1.0));
    CHECK(nmse(2.0 * T, T) == doctest::Approx(1.0));
    CHECK_THROWS_AS(nmse(T, CMat::Zero(3, 3)), std::domain_error);
}
