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

#include <cstdint>
#include <vector>

#include "nafd/random.hpp"
#include "nafd/types.hpp"

namespace nafd
{

/// Physical-unit configuration of one NAFD cell-free deployment. Defaults
/// reproduce the reference deployment: 6 T-APs, 6 R-APs, 4 + 4 users in a
/// 60 m disc at 28 GHz.
struct SystemConfig
{
    int n_tap = 6;
    int n_rap = 6;
    int n_ul_users = 4;
    int n_dl_users = 4;
    int n_ant = 6;
    int n_rf = 3;
    int n_paths = 3;

    double radius_m = 60.0;
    double protect_m = 5.0;
    double carrier_hz = 28e9;
    double noise_dbm = -85.0;
    double p_d_dbm = 30.0;
    double p_u_dbm = 27.0;
    double pathloss_exp = 2.92;
    double shadow_std_db = 8.7;
    double omega_d = 0.5;
    double omega_u = 0.5;

    // Pilot powers. The inter-AP pilot is sent by a T-AP, user pilots by
    // single-antenna users.
    double pilot_ap_dbm = 30.0;
    double pilot_user_dbm = 27.0;

    std::uint64_t master_seed = 2024;

    /// Throws std::invalid_argument on the first violated invariant.
    void validate() const;

    double noise_w() const;
    double p_d_w() const;
    double p_u_w() const;
    double wavelength_m() const { return kSpeedOfLight / carrier_hz; }
};

struct Point
{
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point &) const = default;
};

double distance(const Point &a, const Point &b);

/// Node positions and linear large-scale gains of all four link classes.
struct Scenario
{
    std::vector<Point> tap;
    std::vector<Point> rap;
    std::vector<Point> ul_users;
    std::vector<Point> dl_users;

    Grid<double> beta_dl;  // (k, m): T-AP m -> DL user k
    Grid<double> beta_ul;  // (j, z): UL user j -> R-AP z
    Grid<double> beta_ap;  // (m, z): T-AP m -> R-AP z
    Grid<double> beta_iui; // (k, j): UL user j -> DL user k

    bool operator==(const Scenario &) const = default;
};

double dbm_to_watt(double p_dbm);
double watt_to_dbm(double p_w);

/// Close-in free-space reference path loss in dB, d0 = 1 m, shadowing
/// excluded. Throws std::domain_error for d_m <= 0.
double path_loss_db(double d_m, const SystemConfig &cfg);

/// beta = 10^(-(PL(d) + X)/10), X ~ N(0, shadow_std_db^2).
double large_scale_gain(double d_m, const SystemConfig &cfg, Rng &rng);

/// Uniform placement in the disc; users are resampled until they keep the
/// protection distance to every AP. Throws GeometryInfeasible after 10^4
/// rejected draws for a single user.
Scenario generate_topology(const SystemConfig &cfg, Rng &rng);

/// Redraws only user positions and every user-related gain, keeping APs and
/// the inter-AP gains.
Scenario regenerate_users(const Scenario &base, const SystemConfig &cfg, Rng &rng);

inline constexpr int kMaxPlacementRejections = 10000;

} // namespace nafd
