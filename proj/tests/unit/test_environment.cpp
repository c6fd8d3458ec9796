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

#include <algorithm>
#include <cmath>

#include "nafd/rl/environment.hpp"

using namespace nafd;
using namespace nafd::rl;

namespace
{
SystemConfig tiny()
{
    SystemConfig c;
    c.n_tap = 2;
    c.n_rap = 2;
    c.n_ul_users = 2;
    c.n_dl_users = 2;
    c.n_ant = 4;
    c.n_rf = 2;
    return c;
}

Environment tiny_env(std::uint64_t seed, double coef = 1.0)
{
    const SystemConfig c = tiny();
    Rng topo(seed);
    EnvOptions opt;
    opt.penalty_coefficient = coef;
    return Environment(c, opt, generate_topology(c, topo));
}
} // namespace

TEST_CASE("observation dimensions")
{
    const SystemConfig d;
    CHECK(ul_observation_dim(d) == 160);
    CHECK(dl_observation_dim(d) == 160);
    const SystemConfig t = tiny();
    CHECK(ul_observation_dim(t) == 2 * 2 * 2 * 2 + 4);
    Environment env = tiny_env(70);
    Rng rng(71);
    env.reset(rng);
    CHECK(env.state().size() == env.state_dim());
    CHECK(env.state_dim() == 2 * 20);
    CHECK(env.obs_offset(0) == 0);
    CHECK(env.obs_offset(2) == 20);
    CHECK(env.state().allFinite());
}

TEST_CASE("observation layout: zero estimates and scale invariance")
{
    const SystemConfig c = tiny();
    Rng rng(72);
    const Scenario s = generate_topology(c, rng);
    EstimateBundle est;
    est.g_hat = Grid<CVec>(2, 2, CVec::Zero(2));
    est.h_hat = Grid<CVec>(2, 2, CVec::Zero(2));
    Grid<cd> t(2, 2, cd(0.1, 0.0));
    t(1, 0) = cd(0.0, 0.01);
    const RVec ul0 = build_observation_ul(est, s, t);
    CHECK(ul0.head(16).norm() == 0.0);
    CHECK(ul0(16) == doctest::Approx(-2.0));
    CHECK(ul0(18) == doctest::Approx(-4.0)); // row-major (k, j): entry (1, 0)

    for (auto &v : est.g_hat)
        v = complex_normal_vector(rng, 2, 1.0);
    for (auto &v : est.h_hat)
        v = complex_normal_vector(rng, 2, 1.0);
    const RVec ul = build_observation_ul(est, s, t);
    const RVec dl = build_observation_dl(est, s, t);
    CHECK(ul(0) == doctest::Approx(est.g_hat(0, 0)(0).real() / std::sqrt(s.beta_ul(0, 0))));
    CHECK(ul(1) == doctest::Approx(est.g_hat(0, 0)(0).imag() / std::sqrt(s.beta_ul(0, 0))));
    CHECK(dl(4) == doctest::Approx(est.h_hat(0, 1)(0).real() / std::sqrt(s.beta_dl(0, 1))));

    Scenario scaled = s;
    EstimateBundle est2 = est;
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t z = 0; z < 2; ++z)
        {
            scaled.beta_ul(j, z) *= 1e-6;
            est2.g_hat(j, z) *= 1e-3;
        }
    CHECK((build_observation_ul(est2, scaled, t) - ul).norm() <= 1e-12 * ul.norm());
}

TEST_CASE("action mapping")
{
    CHECK(action_to_power(-1.0, 2.0) == 0.0);
    CHECK(action_to_power(1.0, 2.0) == 2.0);
    CHECK(action_to_power(0.0, 2.0) == 1.0);
    CHECK(action_to_power(5.0, 2.0) == 2.0);
    CHECK(action_to_power(-3.0, 2.0) == 0.0);

    Environment env = tiny_env(73);
    Rng rng(74);
    env.reset(rng);
    RVec raw(4);
    raw << 1.0, 0.0, 1.0, -1.0;
    const PowerAllocation a = env.to_allocation(raw);
    const auto ceil = env.eta_ceiling();
    CHECK(a.p_u[0] == doctest::Approx(env.config().p_u_w()));
    CHECK(a.p_u[1] == doctest::Approx(env.config().p_u_w() / 2));
    CHECK(a.eta[0] == doctest::Approx(ceil[0]));
    CHECK(a.eta[1] == 0.0);
    CHECK_THROWS_AS(env.to_allocation(RVec::Zero(3)), std::invalid_argument);

    // One user at its ceiling saturates the worst T-AP exactly; all users together stay within K P_D.
    RVec solo = -RVec::Ones(4);
    solo(2) = 1.0;
    const StepResult one = env.score(env.to_allocation(solo));
    CHECK(*std::max_element(one.tap_power.begin(), one.tap_power.end()) ==
          doctest::Approx(env.config().p_d_w()).epsilon(1e-9));
    const StepResult all = env.score(env.to_allocation(RVec::Ones(4)));
    for (double p : all.tap_power)
        CHECK(p <= 2 * env.config().p_d_w() * (1.0 + 1e-9));
}

TEST_CASE("power penalty")
{
    CHECK(power_penalty(1.0, {0.2, 0.5}, 1.0) == doctest::Approx(0.5));
    CHECK(power_penalty(1.0, {0.2, 3.0}, 2.0) == doctest::Approx(-2.0));
    CHECK(power_penalty(10.0, {0.0}, 1.0) == doctest::Approx(1.0));
    CHECK(power_penalty(1.0, {1.0}, 1.0) == 0.0);
    CHECK_THROWS_AS(power_penalty(1.0, {}, 1.0), std::invalid_argument);
}

TEST_CASE("rewards decompose over agents")
{
    Environment env = tiny_env(75, 0.7);
    Rng rng(76);
    env.reset(rng);
    const SystemConfig &c = env.config();
    RVec raw(4);
    raw << 0.3, -0.2, 0.5, 0.1;
    const StepResult r = env.score(env.to_allocation(raw));
    const double pen = power_penalty(c.p_d_w(), r.tap_power, 0.7);
    CHECK(r.rewards(0) == doctest::Approx(c.omega_u * r.rates.ul[0].rate));
    CHECK(r.rewards(3) == doctest::Approx(c.omega_d * r.rates.dl[1].rate + pen));
    CHECK(r.total_reward == doctest::Approx(r.rewards.sum()));

    // All-off actions: zero rate, penalty saturates at +coef per DL agent.
    const StepResult z = env.score(env.to_allocation(-RVec::Ones(4)));
    for (const auto &u : z.rates.ul)
        CHECK(u.rate == 0.0);
    for (const auto &d : z.rates.dl)
        CHECK(d.rate == 0.0);
    CHECK(z.total_reward == doctest::Approx(2 * 0.7 * std::clamp(c.p_d_w(), -1.0, 1.0)));
}

TEST_CASE("step keeps channels and refreshes estimates")
{
    Environment env = tiny_env(77);
    Rng rng(78);
    env.reset(rng);
    const auto digest = env.channel_digest();
    const RVec s0 = env.state();
    const StepResult r = env.step(RVec::Zero(4), rng);
    CHECK(env.channel_digest() == digest);
    CHECK((env.state() - s0).norm() > 0.0);
    CHECK(std::isfinite(r.total_reward));
    env.reset(rng);
    CHECK(env.channel_digest() != digest);

    Environment a = tiny_env(77), b = tiny_env(77);
    Rng ra(79), rb(79);
    a.reset(ra);
    b.reset(rb);
    CHECK(a.state() == b.state());
    CHECK(a.channel_digest() == b.channel_digest());
}

TEST_CASE("baseline allocations")
{
    Environment env = tiny_env(80);
    Rng rng(81);
    env.reset(rng);
    const SystemConfig &c = env.config();
    const auto mx = baseline_allocation(BaselineScheme::ul_max, c, env.beamformers(), rng);
    const auto eq = baseline_allocation(BaselineScheme::ul_equal, c, env.beamformers(), rng);
    const auto rd = baseline_allocation(BaselineScheme::ul_random, c, env.beamformers(), rng);
    for (int j = 0; j < 2; ++j)
    {
        CHECK(mx.p_u[j] == doctest::Approx(c.p_u_w()));
        CHECK(eq.p_u[j] == doctest::Approx(c.p_u_w() / 2));
        CHECK(rd.p_u[j] >= 0.0);
        CHECK(rd.p_u[j] <= c.p_u_w());
    }
    CHECK(mx.eta == eq.eta);
    CHECK(mx.eta[0] == mx.eta[1]);
    CHECK(baseline_from_string(to_string(BaselineScheme::ul_random)) == BaselineScheme::ul_random);
    CHECK_THROWS_AS(baseline_from_string("ul_min"), std::invalid_argument);
}
