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

#include "nafd/channel.hpp"
#include "nafd/types.hpp"

namespace nafd
{

inline constexpr double kPinvTolerance = 1e-12;
inline constexpr double kMaxConditionNumber = 1e12;

enum class CombinerMode
{
    joint,
    per_rap
};

struct AnalogSet
{
    std::vector<CMat> W_rf; // per T-AP, n_ant x n_rf
    std::vector<CMat> U_rf; // per R-AP, n_ant x n_rf
};

/// Stacked ZF precoder F of size (N_T n_rf) x K; block m of column i is f_{m,i}.
struct DigitalPrecoder
{
    CMat F;
    int n_rf = 0;

    int n_tap() const { return n_rf == 0 ? 0 : static_cast<int>(F.rows() / n_rf); }
    CVec f(int m, int i) const { return F.block(static_cast<Eigen::Index>(m) * n_rf, i, n_rf, 1); }
    CMat block(int m) const { return F.middleRows(static_cast<Eigen::Index>(m) * n_rf, n_rf); }
};

/// Stacked combiner V of size J x (N_R n_rf); block z of row j is v_{z,j}.
/// In per_rap mode only the serving R-AP block of each row is non-zero.
struct DigitalCombiner
{
    CMat V;
    int n_rf = 0;
    CombinerMode mode = CombinerMode::joint;
    std::vector<int> serving; // per UL user, used in per_rap mode

    int n_rap() const { return n_rf == 0 ? 0 : static_cast<int>(V.cols() / n_rf); }
    Eigen::RowVectorXcd v(int z, int j) const
    {
        return V.block(j, static_cast<Eigen::Index>(z) * n_rf, 1, n_rf);
    }
};

struct PowerAllocation
{
    std::vector<double> eta; // per DL user
    std::vector<double> p_u; // per UL user, watts
};

/// Moore-Penrose pseudoinverse via SVD, singular values below rel_tol * sigma_max dropped.
CMat pinv(const CMat &M, double rel_tol = kPinvTolerance);

/// Ratio of extreme singular values (infinite when rank deficient).
double condition_number(const CMat &M);

/// Unit-modulus matrix from the phases of the n_rf dominant eigenvectors.
CMat analog_from_covariance(const CMat &R_bar, int n_rf);

/// Per-AP analog matrices from the user-averaged covariances.
AnalogSet design_analog(const CovarianceSet &cov, int n_rf);

/// Stack h_hat(k, m) into the (N_T n_rf) x K matrix whose column k collects user k.
CMat stack_downlink(const Grid<CVec> &h_hat);
/// Stack g_hat(j, z) into the (N_R n_rf) x J matrix.
CMat stack_uplink(const Grid<CVec> &g_hat);

/// Minimum-norm F with H_hat^H F = I_K. Throws SingularChannel on rank deficiency.
DigitalPrecoder zf_precoder(const Grid<CVec> &h_hat);

/// Joint: V = pinv(G_hat). per_rap: rows of pinv(G_hat_z) on the serving R-AP only.
DigitalCombiner zf_combiner(const Grid<CVec> &g_hat, CombinerMode mode, const std::vector<int> &serving = {});

/// Serving R-AP per uplink user: argmax_z beta_ul(j, z).
std::vector<int> strongest_rap(const Scenario &scenario);

/// sum_k eta_k ||W f_k||^2 for one T-AP; F_m is n_rf x K.
double tap_power(const CMat &W_rf, const CMat &F_m, const std::vector<double> &eta);

std::vector<double> tap_powers(const AnalogSet &analog, const DigitalPrecoder &precoder, const std::vector<double> &eta);

/// eta = P_D / max_m trace(W_m F_m F_m^H W_m^H). Throws DegenerateInput for all-zero precoders.
double equal_downlink_eta(double p_d, const std::vector<CMat> &W_rf, const DigitalPrecoder &precoder);

/// Largest per-user coefficient with every T-AP within P_D if only that user were served.
std::vector<double> per_user_eta_ceiling(double p_d, const std::vector<CMat> &W_rf, const DigitalPrecoder &precoder);

} // namespace nafd
