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
#include <string>
#include <vector>

#include "nafd/pipeline.hpp"
#include "nafd/rates.hpp"

namespace nafd::rl
{

struct EnvOptions
{
    PipelineOptions pipeline;
    double penalty_coefficient = 1.0;
};

/// Observation of an uplink agent: scaled uplink equivalent estimates for
/// every (user, R-AP) pair followed by log10 |t_{k,j}|^2.
RVec build_observation_ul(const EstimateBundle &est, const Scenario &scenario, const Grid<cd> &t_iui);
/// Observation of a downlink agent: scaled downlink equivalent estimates
/// for every (user, T-AP) pair followed by log10 |t_{k,j}|^2.
RVec build_observation_dl(const EstimateBundle &est, const Scenario &scenario, const Grid<cd> &t_iui);

int ul_observation_dim(const SystemConfig &cfg);
int dl_observation_dim(const SystemConfig &cfg);

/// Affine map of a raw action in [-1, 1] onto [0, ceiling].
double action_to_power(double raw, double ceiling);

/// coefficient * clip(min_m (P_D - P_{D,m}), -1, 1).
double power_penalty(double p_d, const std::vector<double> &tap_power, double coefficient);

enum class BaselineScheme
{
    ul_random,
    ul_equal,
    ul_max
};

std::string to_string(BaselineScheme s);
BaselineScheme baseline_from_string(const std::string &s);

/// UL powers per scheme, DL via equal_downlink_eta.
PowerAllocation baseline_allocation(BaselineScheme scheme, const SystemConfig &cfg, const BeamformerSet &bf, Rng &rng,
                                    double ul_equal_fraction = 0.5);

struct StepResult
{
    RVec rewards;
    RateReport rates;
    std::vector<double> tap_power;
    PowerAllocation allocation;
    double total_reward = 0.0;
};

/// Agents 0..J-1 control uplink users, J..J+K-1 downlink users. The joint
/// state stacks the uplink observation block and the downlink block.
class Environment
{
public:
    Environment(SystemConfig cfg, EnvOptions options, Scenario scenario);

    int n_agents() const { return cfg_.n_ul_users + cfg_.n_dl_users; }
    int n_ul() const { return cfg_.n_ul_users; }
    int n_dl() const { return cfg_.n_dl_users; }
    int state_dim() const { return ul_dim_ + dl_dim_; }
    int obs_offset(int agent) const { return agent < n_ul() ? 0 : ul_dim_; }
    int obs_dim(int agent) const { return agent < n_ul() ? ul_dim_ : dl_dim_; }

    const SystemConfig &config() const { return cfg_; }
    const EnvOptions &options() const { return options_; }
    const Scenario &scenario() const { return scenario_; }
    void set_scenario(Scenario s);

    /// New angles and channels for an episode, then a first pilot round.
    void reset(Rng &rng);

    const RVec &state() const { return state_; }
    const StaticDesign &design() const { return design_; }
    const ChannelSet &channels() const { return channels_; }
    const EstimateBundle &estimates() const { return estimates_; }
    const BeamformerSet &beamformers() const { return beamformers_; }

    /// Per-user eta ceilings of the current beamformers.
    std::vector<double> eta_ceiling() const;
    PowerAllocation to_allocation(const RVec &raw) const;

    /// Rewards for the current state, then a fresh pilot round on the same channels.
    StepResult step(const RVec &raw, Rng &rng);
    StepResult step_allocation(const PowerAllocation &alloc, Rng &rng);

    /// Rewards for the current state without advancing.
    StepResult score(const PowerAllocation &alloc) const;

    /// FNV-1a digest of the current channel realization.
    std::uint64_t channel_digest() const;

private:
    void observe(Rng &rng);

    SystemConfig cfg_;
    EnvOptions options_;
    Scenario scenario_;
    int ul_dim_ = 0;
    int dl_dim_ = 0;
    StaticDesign design_;
    ChannelSet channels_;
    EstimateBundle estimates_;
    BeamformerSet beamformers_;
    RVec state_;
};

} // namespace nafd::rl
