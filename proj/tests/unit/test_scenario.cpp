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

#include "nafd/errors.hpp"
#include "nafd/scenario.hpp"

using namespace nafd;

TEST_CASE("dbm_to_watt reference values")
{
    CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dbm_to_watt(-85.0) == doctest::Approx(3.16227766e-12).epsilon(1e-8));
    CHECK(dbm_to_watt(27.0) == doctest::Approx(0.501187).epsilon(1e-5));
    CHECK(watt_to_dbm(dbm_to_watt(12.5)) == doctest::Approx(12.5));
}

TEST_CASE("path loss at the reference distance and per decade")
{
    const SystemConfig cfg;
    CHECK(path_loss_db(1.0, cfg) == doctest::Approx(61.39).epsilon(0.01 / 61.39));
    CHECK(path_loss_db(10.0, cfg) - path_loss_db(1.0, cfg) == doctest::Approx(29.2).epsilon(1e-12));
    for (int d = 1; d < 60; ++d)
        CHECK(path_loss_db(d + 1.0, cfg) > path_loss_db(d, cfg));
    CHECK_THROWS_AS(path_loss_db(0.0, cfg), std::domain_error);
    CHECK_THROWS_AS(path_loss_db(-3.0, cfg), std::domain_error);
}

TEST_CASE("large-scale gain without shadowing is deterministic")
{
    SystemConfig cfg;
    cfg.shadow_std_db = 0.0;
    Rng rng(1);
    CHECK(large_scale_gain(1.0, cfg, rng) == doctest::Approx(std::pow(10.0, -path_loss_db(1.0, cfg) / 10.0)));
    CHECK(std::log10(large_scale_gain(1.0, cfg, rng)) == doctest::Approx(-6.139).epsilon(1e-3));
}

TEST_CASE("shadowing statistics")
{
    const SystemConfig cfg;
    Rng rng(7);
    const int n = 100000;
    const double d = 17.0, pl = path_loss_db(d, cfg);
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double x = -10.0 * std::log10(large_scale_gain(d, cfg, rng)) - pl;
        s += x;
        s2 += x * x;
    }
    const double mean = s / n, sd = std::sqrt(s2 / n - mean * mean);
    CHECK(std::abs(mean) < 0.1);
    CHECK(std::abs(sd - 8.7) < 0.15);
}

TEST_CASE("topology respects the disc and the protection distance")
{
    SystemConfig cfg;
    Rng rng(3);
    const Scenario s = generate_topology(cfg, rng);
    CHECK(s.tap.size() == 6);
    CHECK(s.rap.size() == 6);
    CHECK(s.ul_users.size() == 4);
    CHECK(s.dl_users.size() == 4);
    auto inside = [&](const Point &p) { return std::hypot(p.x, p.y) <= cfg.radius_m + 1e-12; };
    for (const auto *group : {&s.tap, &s.rap, &s.ul_users, &s.dl_users})
        for (const auto &p : *group)
            CHECK(inside(p));
    for (const auto *users : {&s.ul_users, &s.dl_users})
        for (const auto &u : *users)
        {
            for (const auto &a : s.tap)
                CHECK(distance(u, a) >= cfg.protect_m);
            for (const auto &a : s.rap)
                CHECK(distance(u, a) >= cfg.protect_m);
        }
    for (const auto *grid : {&s.beta_dl, &s.beta_ul, &s.beta_ap, &s.beta_iui})
        for (double b : *grid)
        {
            CHECK(b > 0.0);
            CHECK(std::isfinite(b));
        }
    CHECK(s.beta_dl.rows() == 4);
    CHECK(s.beta_dl.cols() == 6);
    CHECK(s.beta_iui.rows() == 4);
    CHECK(s.beta_iui.cols() == 4);
}

TEST_CASE("topology with zero protection stays inside the disc")
{
    SystemConfig cfg;
    cfg.protect_m = 0.0;
    Rng rng(11);
    const Scenario s = generate_topology(cfg, rng);
    for (const auto *group : {&s.tap, &s.rap, &s.ul_users, &s.dl_users})
        for (const auto &p : *group)
            CHECK(std::hypot(p.x, p.y) <= cfg.radius_m + 1e-12);
}

TEST_CASE("topology is reproducible from the seed")
{
    const SystemConfig cfg;
    Rng a(99), b(99);
    CHECK(generate_topology(cfg, a) == generate_topology(cfg, b));
}

TEST_CASE("infeasible geometry is reported")
{
    SystemConfig cfg;
    cfg.radius_m = 6.0;
    cfg.protect_m = 5.9;
    cfg.n_tap = 6;
    Rng rng(5);
    CHECK_THROWS_AS(generate_topology(cfg, rng), GeometryInfeasible);
}

TEST_CASE("regenerating users keeps the access points")
{
    const SystemConfig cfg;
    Rng rng(21);
    const Scenario base = generate_topology(cfg, rng);
    const Scenario moved = regenerate_users(base, cfg, rng);
    CHECK(moved.tap == base.tap);
    CHECK(moved.rap == base.rap);
    CHECK(moved.beta_ap == base.beta_ap);
    CHECK(!(moved.ul_users == base.ul_users));
}

TEST_CASE("config validation")
{
    SystemConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.n_rf = 7;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.omega_d = 0.7;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.n_tap = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
