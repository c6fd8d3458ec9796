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

#pragma once

#include <vector>

#include "nafd/random.hpp"
#include "nafd/types.hpp"

namespace nafd
{

inline constexpr double kRankTolerance = 1e-10;

/// How the inter-AP coupling matrix A enters the pilot observation.
/// `designed` applies the water-filling solution A = Sigma_A U_R^H directly;
/// `kronecker` applies its nearest separable RF realization W^T (x) U^H.
enum class CouplingRealization
{
    designed,
    kronecker
};

/// Water-filling over eigen-directions. Minimizes
/// sum_i 1 / (1/lambda_i + rho/sigma2 * x_i) subject to sum x = budget, x >= 0,
/// using at most `slots` of the strongest admissible directions.
/// Throws NoSignalDirection when no eigenvalue exceeds rank_tol * lambda_1.
RVec waterfill(const RVec &eigvals_desc, double rho, double sigma2, double budget, int slots,
               double rank_tol = kRankTolerance);

/// Objective minimized by waterfill over the admissible directions.
double waterfill_objective(const RVec &eigvals_desc, const RVec &x, double rho, double sigma2,
                           double rank_tol = kRankTolerance);

struct KronFactors
{
    CMat W;          // n x n_rf, with W^T (x) U^H approximating A
    CMat U;          // n x n_rf
    RVec singular;   // singular values of the rearranged matrix
    double residual; // ||A - W^T (x) U^H||_F
};

struct CouplingDesign
{
    CMat eigvecs; // leading eigenvectors of R_ap (columns)
    RVec eigvals; // descending
    RVec x;       // water-filling allocation, one entry per eigvecs column
    RVec sigma_a; // sqrt(x)
    CMat A;       // n_rf^2 x n^2
    KronFactors rf; // empty unless factorized
};

/// Dense design from the n^2 x n^2 covariance.
CouplingDesign optimal_coupling(const CMat &R_ap, double rho, double sigma2, int n_rf, bool factorize = true);

/// Same design from a factor F with R_ap = F F^H; eigenvectors via the L x L Gram matrix.
CouplingDesign optimal_coupling_lowrank(const CMat &F, double rho, double sigma2, int n_rf, bool factorize = false);

/// Rearrangement with ||A - B (x) C||_F = ||A~ - vec(B) vec(C)^T||_F for B: rb x cb, C: rc x cc.
CMat vanloan_rearrange(const CMat &A, int rb, int cb, int rc, int cc);

/// Nearest Kronecker product W^T (x) U^H to an n_rf^2 x n^2 matrix.
KronFactors kron_factorize(const CMat &A, int n, int n_rf);

/// Coupling matrix realized by RF factors: W^T (x) U^H.
CMat kron_coupling(const CMat &W, const CMat &U);

/// Y~ = sqrt(rho) U^H H W + N, N ~ CN(0, sigma2) entrywise.
CMat simulate_interap_pilot(const CMat &H, const CMat &W, const CMat &U, double rho, double sigma2, Rng &rng);

/// y = sqrt(rho) A vec(H) + n.
CVec simulate_coupled_pilot(const CMat &H, const CMat &A, double rho, double sigma2, Rng &rng);

struct InterApEstimate
{
    CMat H_hat;
    CMat C; // error covariance of vec(H)
};

/// Linear MMSE map y -> vec(H_hat) with its error covariance, reusable across
/// realizations that share the covariance and coupling.
struct InterApEstimator
{
    int n = 0;
    CMat gain;      // n^2 x rows(A)
    CMat C;         // empty when built without the dense covariance
    double trace_C = 0.0;

    CMat estimate(const CVec &y) const;
};

InterApEstimator make_interap_estimator(const CMat &R_ap, const CMat &A, double rho, double sigma2);
InterApEstimator make_interap_estimator_lowrank(const CMat &F, const CMat &A, double rho, double sigma2,
                                                bool dense_covariance);

InterApEstimate mmse_interap(const CVec &y, const CMat &R_ap, const CMat &A, double rho, double sigma2);
InterApEstimate mmse_interap(const CMat &Y_tilde, const CMat &R_ap, const CMat &A, double rho, double sigma2);

CMat equivalent_covariance(const CMat &analog, const CMat &R_link);

/// tau x users identity-column pilots. Throws ContaminationUnsupported when tau < users.
CMat make_pilots(int tau, int users);

/// Y = sum_u sqrt(rho) (analog^H link_u) phi_u^T + N.
CMat simulate_user_pilot(const std::vector<CVec> &links, const CMat &analog, const CMat &pilots, double rho,
                         double sigma2, Rng &rng);

struct EquivalentEstimate
{
    CVec est;
    CMat R_eq;
    CMat R_hat;
    CMat R_tilde;
};

/// Gain and covariances for one equivalent link; est = gain * Y * conj(phi_u).
struct EquivalentEstimator
{
    CMat gain;
    CMat R_eq;
    CMat R_hat;
    CMat R_tilde;
};

EquivalentEstimator make_equivalent_estimator(const CMat &pilots, int user, const std::vector<CMat> &R_eq_all,
                                              double rho, double sigma2);

EquivalentEstimate mmse_equivalent(const CMat &Y, const CMat &pilots, int user, const std::vector<CMat> &R_eq_all,
                                   double rho, double sigma2);

double nmse(const CMat &est, const CMat &truth);

} // namespace nafd
