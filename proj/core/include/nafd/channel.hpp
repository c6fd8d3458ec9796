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

#include <span>
#include <vector>

#include "nafd/random.hpp"
#include "nafd/scenario.hpp"
#include "nafd/types.hpp"

namespace nafd
{

// Dense n^2 x n^2 inter-AP covariances are only formed up to this array size.
inline constexpr int kMaxCovarianceAntennas = 32;

struct InterApAngles
{
    std::vector<double> rx; // AoA at the R-AP
    std::vector<double> tx; // AoD at the T-AP
    bool operator==(const InterApAngles &) const = default;
};

/// Path angles of one coherence block, all in [-pi, pi].
struct AngleSet
{
    Grid<std::vector<double>> dl; // (k, m)
    Grid<std::vector<double>> ul; // (j, z)
    Grid<InterApAngles> ap;       // (m, z)
};

/// One small-scale realization of every link. h(k, m) is stored as the
/// column vector whose conjugate transpose multiplies the precoder.
struct ChannelSet
{
    Grid<CVec> h;     // (k, m), n_ant
    Grid<CVec> g;     // (j, z), n_ant
    Grid<CMat> H_ap;  // (m, z), n_ant x n_ant, R-AP rows
    Grid<cd> t_iui;   // (k, j)
    AngleSet angles;
};

/// Angle-conditioned covariances. ap_factor(m, z) is an n^2 x L matrix F
/// with R_ap = F F^H, exposed so large arrays can be handled in low rank.
struct CovarianceSet
{
    Grid<CMat> R_h;
    Grid<CMat> R_g;
    Grid<CMat> R_ap;
    Grid<CMat> ap_factor;
};

/// Unit-norm half-wavelength ULA response, v[p] = exp(i pi p sin(theta)) / sqrt(n).
CVec steering_vector(double theta, int n);

struct VectorDraw
{
    CVec channel;
    std::vector<double> angles;
};

struct InterApDraw
{
    CMat channel;
    InterApAngles angles;
};

/// sum_l gains[l] v(angles[l]); the deterministic core of the sampler.
CVec vector_channel(std::span<const cd> gains, std::span<const double> angles, int n);
CMat interap_channel(std::span<const cd> gains, const InterApAngles &angles, int n);

VectorDraw sample_vector_channel(double beta, int n_paths, int n, Rng &rng);
InterApDraw sample_interap_channel(double beta, int n_paths, int n, Rng &rng);

/// Same statistics with the angles held fixed: only path gains are drawn.
CVec sample_vector_given_angles(double beta, std::span<const double> angles, int n, Rng &rng);
CMat sample_interap_given_angles(double beta, const InterApAngles &angles, int n, Rng &rng);

cd sample_iui(double beta, Rng &rng);

/// beta * sum_l v(theta_l) v(theta_l)^H.
CMat vector_covariance(std::span<const double> angles, double beta, int n);

/// Covariance of vec(H): beta * sum_l vec(v_r v_t^H) vec(v_r v_t^H)^H.
/// Throws CapacityError for n > kMaxCovarianceAntennas.
CMat interap_covariance(const InterApAngles &angles, double beta, int n);

/// Low-rank factor F (n^2 x L) of interap_covariance; no size cap.
CMat interap_covariance_factor(const InterApAngles &angles, double beta, int n);

AngleSet draw_angles(const SystemConfig &cfg, const Scenario &scenario, Rng &rng);
ChannelSet draw_channels(const SystemConfig &cfg, const Scenario &scenario, const AngleSet &angles, Rng &rng);
ChannelSet sample_channel_set(const SystemConfig &cfg, const Scenario &scenario, Rng &rng);
CovarianceSet covariance_set(const SystemConfig &cfg, const Scenario &scenario, const AngleSet &angles);

} // namespace nafd
