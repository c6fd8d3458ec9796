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

#include "nafd/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nafd/errors.hpp"

namespace nafd
{

void SystemConfig::validate() const
{
    auto fail = [](const std::string &what) { throw std::invalid_argument("SystemConfig: " + what); };
    if (n_tap < 1 || n_rap < 1 || n_ul_users < 1 || n_dl_users < 1)
        fail("node counts must be >= 1");
    if (n_ant < 1 || n_rf < 1 || n_paths < 1)
        fail("antenna, RF-chain and path counts must be >= 1");
    if (n_rf > n_ant)
        fail("n_rf must not exceed n_ant");
    if (!(radius_m > protect_m) || !(protect_m >= 0.0))
        fail("require radius_m > protect_m >= 0");
    if (!(carrier_hz > 0.0))
        fail("carrier_hz must be positive");
    if (!(shadow_std_db >= 0.0))
        fail("shadow_std_db must be non-negative");
    if (omega_d < 0.0 || omega_u < 0.0 || std::abs(omega_d + omega_u - 1.0) > 1e-9)
        fail("rate weights must be non-negative and sum to 1");
}

double SystemConfig::noise_w() const { return dbm_to_watt(noise_dbm); }
double SystemConfig::p_d_w() const { return dbm_to_watt(p_d_dbm); }
double SystemConfig::p_u_w() const { return dbm_to_watt(p_u_dbm); }

double distance(const Point &a, const Point &b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

double dbm_to_watt(double p_dbm)
{
    return std::pow(10.0, (p_dbm - 30.0) / 10.0);
}

double watt_to_dbm(double p_w)
{
    return 10.0 * std::log10(p_w) + 30.0;
}

double path_loss_db(double d_m, const SystemConfig &cfg)
{
    if (!(d_m > 0.0))
        throw std::domain_error("path_loss_db: distance must be positive");
    constexpr double d0 = 1.0;
    const double pl0 = 20.0 * std::log10(4.0 * kPi * d0 / cfg.wavelength_m());
    return pl0 + 10.0 * cfg.pathloss_exp * std::log10(d_m / d0);
}

double large_scale_gain(double d_m, const SystemConfig &cfg, Rng &rng)
{
    const double pl = path_loss_db(d_m, cfg);
    const double shadow = cfg.shadow_std_db > 0.0 ? normal(rng, 0.0, cfg.shadow_std_db) : 0.0;
    return std::pow(10.0, -(pl + shadow) / 10.0);
}

namespace
{

Point uniform_in_disc(double radius, Rng &rng)
{
    const double r = radius * std::sqrt(uniform(rng, 0.0, 1.0));
    const double phi = uniform(rng, 0.0, 2.0 * kPi);
    return {r * std::cos(phi), r * std::sin(phi)};
}

// Links without a protection constraint (AP-AP, user-user) can land
// arbitrarily close; the model is only valid beyond the 1 m reference.
double link_distance(const Point &a, const Point &b)
{
    return std::max(distance(a, b), 1.0);
}

Point place_user(const SystemConfig &cfg, const Scenario &s, Rng &rng)
{
    for (int attempt = 0; attempt < kMaxPlacementRejections; ++attempt)
    {
        const Point p = uniform_in_disc(cfg.radius_m, rng);
        bool ok = true;
        for (const auto &ap : s.tap)
            ok = ok && distance(p, ap) >= cfg.protect_m;
        for (const auto &ap : s.rap)
            ok = ok && distance(p, ap) >= cfg.protect_m;
        if (ok)
            return p;
    }
    throw GeometryInfeasible("generate_topology: no user position keeps the protection distance after " +
                             std::to_string(kMaxPlacementRejections) + " draws");
}

void place_users_and_gains(Scenario &s, const SystemConfig &cfg, Rng &rng)
{
    const auto K = static_cast<std::size_t>(cfg.n_dl_users);
    const auto J = static_cast<std::size_t>(cfg.n_ul_users);
    s.ul_users.clear();
    s.dl_users.clear();
    for (std::size_t j = 0; j < J; ++j)
        s.ul_users.push_back(place_user(cfg, s, rng));
    for (std::size_t k = 0; k < K; ++k)
        s.dl_users.push_back(place_user(cfg, s, rng));

    s.beta_dl = Grid<double>(K, s.tap.size());
    s.beta_ul = Grid<double>(J, s.rap.size());
    s.beta_iui = Grid<double>(K, J);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t m = 0; m < s.tap.size(); ++m)
            s.beta_dl(k, m) = large_scale_gain(link_distance(s.dl_users[k], s.tap[m]), cfg, rng);
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t z = 0; z < s.rap.size(); ++z)
            s.beta_ul(j, z) = large_scale_gain(link_distance(s.ul_users[j], s.rap[z]), cfg, rng);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t j = 0; j < J; ++j)
            s.beta_iui(k, j) = large_scale_gain(link_distance(s.dl_users[k], s.ul_users[j]), cfg, rng);
}

} // namespace

Scenario generate_topology(const SystemConfig &cfg, Rng &rng)
{
    cfg.validate();
    Scenario s;
    for (int m = 0; m < cfg.n_tap; ++m)
        s.tap.push_back(uniform_in_disc(cfg.radius_m, rng));
    for (int z = 0; z < cfg.n_rap; ++z)
        s.rap.push_back(uniform_in_disc(cfg.radius_m, rng));

    s.beta_ap = Grid<double>(s.tap.size(), s.rap.size());
    for (std::size_t m = 0; m < s.tap.size(); ++m)
        for (std::size_t z = 0; z < s.rap.size(); ++z)
            s.beta_ap(m, z) = large_scale_gain(link_distance(s.tap[m], s.rap[z]), cfg, rng);

    place_users_and_gains(s, cfg, rng);
    return s;
}

Scenario regenerate_users(const Scenario &base, const SystemConfig &cfg, Rng &rng)
{
    Scenario s = base;
    place_users_and_gains(s, cfg, rng);
    return s;
}

} // namespace nafd
