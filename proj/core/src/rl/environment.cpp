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

#include "nafd/rl/environment.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "nafd/errors.hpp"

namespace nafd::rl
{

namespace
{
void append_iui(RVec &obs, Eigen::Index &pos, const Grid<cd> &t)
{
    for (std::size_t k = 0; k < t.rows(); ++k)
        for (std::size_t j = 0; j < t.cols(); ++j)
            obs(pos++) = std::log10(std::max(std::norm(t(k, j)), 1e-300));
}

RVec scaled_block(const Grid<CVec> &est, const Grid<double> &beta, std::size_t extra)
{
    const Eigen::Index rf = est(0, 0).size();
    RVec obs(static_cast<Eigen::Index>(2 * est.size()) * rf + static_cast<Eigen::Index>(extra));
    Eigen::Index pos = 0;
    for (std::size_t u = 0; u < est.rows(); ++u)
        for (std::size_t a = 0; a < est.cols(); ++a)
        {
            const double s = 1.0 / std::sqrt(beta(u, a));
            const CVec &v = est(u, a);
            for (Eigen::Index r = 0; r < rf; ++r)
            {
                obs(pos++) = s * v(r).real();
                obs(pos++) = s * v(r).imag();
            }
        }
    return obs;
}
} // namespace

RVec build_observation_ul(const EstimateBundle &est, const Scenario &s, const Grid<cd> &t_iui)
{
    RVec obs = scaled_block(est.g_hat, s.beta_ul, t_iui.size());
    Eigen::Index pos = obs.size() - static_cast<Eigen::Index>(t_iui.size());
    append_iui(obs, pos, t_iui);
    return obs;
}

RVec build_observation_dl(const EstimateBundle &est, const Scenario &s, const Grid<cd> &t_iui)
{
    RVec obs = scaled_block(est.h_hat, s.beta_dl, t_iui.size());
    Eigen::Index pos = obs.size() - static_cast<Eigen::Index>(t_iui.size());
    append_iui(obs, pos, t_iui);
    return obs;
}

int ul_observation_dim(const SystemConfig &c)
{
    return 2 * c.n_ul_users * c.n_rap * c.n_rf + c.n_dl_users * c.n_ul_users;
}

int dl_observation_dim(const SystemConfig &c)
{
    return 2 * c.n_dl_users * c.n_tap * c.n_rf + c.n_dl_users * c.n_ul_users;
}

double action_to_power(double raw, double ceiling)
{
    return ceiling * (std::clamp(raw, -1.0, 1.0) + 1.0) / 2.0;
}

double power_penalty(double p_d, const std::vector<double> &tap_power, double coefficient)
{
    if (tap_power.empty())
        throw std::invalid_argument("power_penalty: no T-AP powers");
    const double worst = *std::max_element(tap_power.begin(), tap_power.end());
    return coefficient * std::clamp(p_d - worst, -1.0, 1.0);
}

std::string to_string(BaselineScheme s)
{
    switch (s)
    {
    case BaselineScheme::ul_random:
        return "ul_random";
    case BaselineScheme::ul_equal:
        return "ul_equal";
    case BaselineScheme::ul_max:
        return "ul_max";
    }
    return "unknown";
}

BaselineScheme baseline_from_string(const std::string &s)
{
    if (s == "ul_random")
        return BaselineScheme::ul_random;
    if (s == "ul_equal")
        return BaselineScheme::ul_equal;
    if (s == "ul_max")
        return BaselineScheme::ul_max;
    throw std::invalid_argument("unknown baseline scheme: " + s);
}

PowerAllocation baseline_allocation(BaselineScheme scheme, const SystemConfig &cfg, const BeamformerSet &bf, Rng &rng,
                                    double ul_equal_fraction)
{
    PowerAllocation a;
    const double p_u = cfg.p_u_w();
    a.p_u.resize(static_cast<std::size_t>(cfg.n_ul_users));
    for (auto &p : a.p_u)
    {
        switch (scheme)
        {
        case BaselineScheme::ul_random:
            p = uniform(rng, 0.0, p_u);
            break;
        case BaselineScheme::ul_equal:
            p = ul_equal_fraction * p_u;
            break;
        case BaselineScheme::ul_max:
            p = p_u;
            break;
        }
    }
    const double eta = equal_downlink_eta(cfg.p_d_w(), bf.analog.W_rf, bf.precoder);
    a.eta.assign(static_cast<std::size_t>(cfg.n_dl_users), eta);
    return a;
}

Environment::Environment(SystemConfig cfg, EnvOptions options, Scenario scenario)
    : cfg_(std::move(cfg)), options_(options), scenario_(std::move(scenario))
{
    cfg_.validate();
    ul_dim_ = ul_observation_dim(cfg_);
    dl_dim_ = dl_observation_dim(cfg_);
}

void Environment::set_scenario(Scenario s)
{
    scenario_ = std::move(s);
}

void Environment::reset(Rng &rng)
{
    constexpr int kAttempts = 16;
    for (int attempt = 0; attempt < kAttempts; ++attempt)
    {
        try
        {
            const AngleSet angles = draw_angles(cfg_, scenario_, rng);
            channels_ = draw_channels(cfg_, scenario_, angles, rng);
            design_ = design_static(cfg_, scenario_, angles, options_.pipeline);
            observe(rng);
            return;
        }
        catch (const SingularChannel &)
        {
        }
    }
    throw SingularChannel("Environment::reset: no full-rank realization found");
}

void Environment::observe(Rng &rng)
{
    estimates_ = estimate_all(design_, channels_, rng);
    beamformers_ = build_beamformers(design_, estimates_);
    state_.resize(state_dim());
    state_.head(ul_dim_) = build_observation_ul(estimates_, scenario_, channels_.t_iui);
    state_.tail(dl_dim_) = build_observation_dl(estimates_, scenario_, channels_.t_iui);
}

std::vector<double> Environment::eta_ceiling() const
{
    return per_user_eta_ceiling(cfg_.p_d_w(), beamformers_.analog.W_rf, beamformers_.precoder);
}

PowerAllocation Environment::to_allocation(const RVec &raw) const
{
    if (raw.size() != n_agents())
        throw std::invalid_argument("Environment: action dimension mismatch");
    PowerAllocation a;
    const double p_u = cfg_.p_u_w();
    for (int j = 0; j < n_ul(); ++j)
        a.p_u.push_back(action_to_power(raw(j), p_u));
    const auto ceiling = eta_ceiling();
    for (int k = 0; k < n_dl(); ++k)
        a.eta.push_back(action_to_power(raw(n_ul() + k), ceiling[static_cast<std::size_t>(k)]));
    return a;
}

StepResult Environment::score(const PowerAllocation &alloc) const
{
    StepResult r;
    r.allocation = alloc;
    r.rates = evaluate_lower_bounds(design_, beamformers_, channels_, alloc, cfg_);
    r.tap_power = tap_powers(beamformers_.analog, beamformers_.precoder, alloc.eta);
    const double penalty = power_penalty(cfg_.p_d_w(), r.tap_power, options_.penalty_coefficient);
    r.rewards.resize(n_agents());
    for (int j = 0; j < n_ul(); ++j)
        r.rewards(j) = cfg_.omega_u * r.rates.ul[static_cast<std::size_t>(j)].rate;
    for (int k = 0; k < n_dl(); ++k)
        r.rewards(n_ul() + k) = cfg_.omega_d * r.rates.dl[static_cast<std::size_t>(k)].rate + penalty;
    r.total_reward = r.rewards.sum();
    if (!std::isfinite(r.total_reward))
        throw std::runtime_error("Environment: non-finite reward");
    return r;
}

StepResult Environment::step(const RVec &raw, Rng &rng)
{
    return step_allocation(to_allocation(raw), rng);
}

StepResult Environment::step_allocation(const PowerAllocation &alloc, Rng &rng)
{
    StepResult r = score(alloc);
    observe(rng);
    return r;
}

std::uint64_t Environment::channel_digest() const
{
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](double x) {
        std::uint64_t bits;
        std::memcpy(&bits, &x, sizeof bits);
        for (int i = 0; i < 8; ++i)
        {
            h ^= (bits >> (8 * i)) & 0xffU;
            h *= 1099511628211ULL;
        }
    };
    auto mix_vec = [&](const auto &v) {
        for (Eigen::Index i = 0; i < v.size(); ++i)
        {
            mix(v(i).real());
            mix(v(i).imag());
        }
    };
    for (const auto &v : channels_.h)
        mix_vec(v);
    for (const auto &v : channels_.g)
        mix_vec(v);
    for (const auto &M : channels_.H_ap)
        mix_vec(M.reshaped());
    for (const auto &t : channels_.t_iui)
    {
        mix(t.real());
        mix(t.imag());
    }
    return h;
}

} // namespace nafd::rl
