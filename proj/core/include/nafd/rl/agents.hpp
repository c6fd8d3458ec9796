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

#include <string>
#include <vector>

#include "nafd/random.hpp"
#include "nafd/rl/adam.hpp"
#include "nafd/rl/mlp.hpp"
#include "nafd/rl/replay.hpp"

namespace nafd::rl
{

enum class Algorithm
{
    matd3,
    maddpg
};

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string &s);

struct TrainConfig
{
    Algorithm algorithm = Algorithm::matd3;
    int episodes = 1000;
    int t_max = 50;
    int batch_size = 1024;
    double lr = 5e-4;
    double gamma = 0.95;
    int policy_delay = 2;
    double target_noise = 0.2;
    double target_noise_clip = 1.0;
    double exploration_noise = 0.5;
    double tau = 0.01; // soft-update rate
    std::size_t replay_capacity = 100000;
    int hidden = 64;
    bool dynamic = false;
    int dynamic_period = 200;
    int checkpoint_every = 0; // episodes; 0 disables periodic checkpoints

    void validate() const;
};

struct Agent
{
    int obs_offset = 0;
    int obs_dim = 0;
    Mlp actor, actor_target;
    Mlp critic1, critic2;
    Mlp critic1_target, critic2_target; // critic2 pair unused by MADDPG
    Adam actor_opt, critic1_opt, critic2_opt;

    bool operator==(const Agent &) const = default;
};

struct AgentEnsemble
{
    Algorithm algorithm = Algorithm::matd3;
    int state_dim = 0;
    std::vector<Agent> agents;

    int n_agents() const { return static_cast<int>(agents.size()); }
    int critic_input_dim() const { return state_dim + n_agents(); }

    /// Deterministic joint actions (n_agents x batch) from joint states.
    RMat act(const RMat &states) const;
    RMat act_target(const RMat &states) const;

    bool operator==(const AgentEnsemble &) const = default;
};

AgentEnsemble make_ensemble(const std::vector<int> &obs_offset, const std::vector<int> &obs_dim, int state_dim,
                            const TrainConfig &cfg, Rng &rng);

/// r + gamma * min(q1, q2).
double td3_target(double r, double gamma, double q1, double q2);

/// Critic regression targets, one row per agent. MATD3 uses smoothed target
/// actions and the twin minimum; MADDPG the single target critic.
RMat compute_targets(const Batch &batch, const AgentEnsemble &ens, const TrainConfig &cfg, Rng &rng);

/// The target actions used by compute_targets, exposed for inspection.
RMat smoothed_target_actions(const RMat &s2, const AgentEnsemble &ens, const TrainConfig &cfg, Rng &rng);

/// Mean squared error of critic(X) against y, with gradient added to grad.
double critic_loss(const Mlp &critic, const RMat &X, const RVec &y, RVec &grad);

struct CriticLosses
{
    double loss1 = 0.0;
    double loss2 = 0.0;
};

/// One Adam step of each critic towards y.
CriticLosses critic_update(const Batch &batch, Agent &agent, const RVec &y, Algorithm algorithm);

/// -mean Q1(s, a) with agent i's action replaced by its actor; gradient
/// with respect to the actor parameters added to grad.
double actor_loss(const Batch &batch, int agent, const AgentEnsemble &ens, RVec &grad);

/// One Adam step of agent i's actor along the deterministic policy gradient.
double actor_update(const Batch &batch, int agent, AgentEnsemble &ens);

void soft_update(Mlp &target, const Mlp &source, double tau);
void soft_update(AgentEnsemble &ens, double tau);

/// Critic input [s; a].
RMat critic_input(const RMat &s, const RMat &a);

} // namespace nafd::rl
