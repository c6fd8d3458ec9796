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
#include <functional>
#include <string>
#include <vector>

#include "nafd/rl/agents.hpp"
#include "nafd/rl/environment.hpp"
#include "nafd/rl/replay.hpp"

namespace nafd::rl
{

inline constexpr std::uint64_t kReplayStream = 12;

struct TrainLog
{
    std::string algorithm;
    std::vector<double> mean_reward;               // per episode, mean over steps of the total reward
    std::vector<double> mean_objective;            // per episode, weighted sum rate
    std::vector<std::vector<double>> agent_reward; // per episode, per agent
    std::vector<std::string> checkpoints;
    double wall_seconds = 0.0;

    std::size_t episodes() const { return mean_reward.size(); }
    /// episode,algorithm,mean_reward,mean_objective,agent_0,...
    std::string csv() const;
    double tail_mean(std::size_t n) const;
};

/// Training loop state: networks, optimizers, replay and generators.
class Trainer
{
public:
    Trainer(SystemConfig sys, TrainConfig cfg, EnvOptions env);

    /// Trains until `episode_end` episodes are complete.
    void run(int episode_end);
    void run_episode();

    /// Writes the JSON checkpoint and a binary replay file next to it.
    void save(const std::string &path) const;
    static Trainer load(const std::string &path);

    const SystemConfig &system() const { return sys_; }
    const TrainConfig &config() const { return cfg_; }
    const EnvOptions &env_options() const { return env_opts_; }
    const TrainLog &log() const { return log_; }
    const AgentEnsemble &ensemble() const { return ens_; }
    const ReplayBuffer &replay() const { return replay_; }
    int next_episode() const { return next_episode_; }
    long long critic_updates() const { return critic_updates_; }
    long long actor_updates() const { return actor_updates_; }
    const Scenario &base_scenario() const { return base_; }
    Scenario scenario_for_episode(int e) const;

    /// Directory for periodic and divergence checkpoints; empty disables them.
    std::string checkpoint_dir;

private:
    void update();

    SystemConfig sys_;
    TrainConfig cfg_;
    EnvOptions env_opts_;
    Scenario base_;
    AgentEnsemble ens_;
    ReplayBuffer replay_;
    Rng explore_rng_;
    Rng replay_rng_;
    int next_episode_ = 0;
    long long critic_updates_ = 0;
    long long actor_updates_ = 0;
    TrainLog log_;
};

TrainLog train(const SystemConfig &sys, const TrainConfig &cfg, const EnvOptions &env,
               const std::string &checkpoint_dir = "");

using AllocationPolicy = std::function<PowerAllocation(const Environment &, Rng &)>;

AllocationPolicy actor_policy(const AgentEnsemble &ens);
AllocationPolicy baseline_policy(BaselineScheme scheme);

struct EvalResult
{
    std::string scheme;
    int episodes = 0;
    double mean_reward = 0.0;
    double reward_stderr = 0.0;
    double mean_objective = 0.0;
    double objective_stderr = 0.0;
    std::uint64_t digest = 0; // combined channel digest of all evaluated episodes
    std::vector<double> episode_reward;
};

/// Held-out rollouts with episode seeds derived from `seed` only, so every
/// policy sees the same channels.
EvalResult evaluate_policy(const SystemConfig &sys, const EnvOptions &env, const Scenario &scenario,
                           const AllocationPolicy &policy, int episodes, int t_max, std::uint64_t seed,
                           const std::string &name);

} // namespace nafd::rl
