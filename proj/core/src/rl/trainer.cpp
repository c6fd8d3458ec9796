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

#include "nafd/rl/trainer.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "nafd/errors.hpp"
#include "nafd/io.hpp"

namespace nafd::rl
{

std::string TrainLog::csv() const
{
    std::ostringstream os;
    os << "episode,algorithm,mean_reward,mean_objective";
    const std::size_t n_agents = agent_reward.empty() ? 0 : agent_reward.front().size();
    for (std::size_t i = 0; i < n_agents; ++i)
        os << ",agent_" << i;
    os << "\n";
    for (std::size_t e = 0; e < mean_reward.size(); ++e)
    {
        os << e << "," << algorithm << "," << csv_number(mean_reward[e]) << "," << csv_number(mean_objective[e]);
        for (double r : agent_reward[e])
            os << "," << csv_number(r);
        os << "\n";
    }
    return os.str();
}

double TrainLog::tail_mean(std::size_t n) const
{
    if (mean_reward.empty())
        return 0.0;
    const std::size_t k = std::min(n, mean_reward.size());
    double s = 0.0;
    for (std::size_t e = mean_reward.size() - k; e < mean_reward.size(); ++e)
        s += mean_reward[e];
    return s / static_cast<double>(k);
}

namespace
{
std::vector<int> offsets(const Environment &env)
{
    std::vector<int> o;
    for (int i = 0; i < env.n_agents(); ++i)
        o.push_back(env.obs_offset(i));
    return o;
}

std::vector<int> dims(const Environment &env)
{
    std::vector<int> d;
    for (int i = 0; i < env.n_agents(); ++i)
        d.push_back(env.obs_dim(i));
    return d;
}
} // namespace

Trainer::Trainer(SystemConfig sys, TrainConfig cfg, EnvOptions env)
    : sys_(std::move(sys)), cfg_(cfg), env_opts_(env)
{
    sys_.validate();
    cfg_.validate();
    Rng topo = make_rng(sys_.master_seed, streams::topology, 0);
    base_ = generate_topology(sys_, topo);
    const Environment probe(sys_, env_opts_, base_);
    Rng init = make_rng(sys_.master_seed, streams::network_init, 0);
    ens_ = make_ensemble(offsets(probe), dims(probe), probe.state_dim(), cfg_, init);
    replay_ = ReplayBuffer(cfg_.replay_capacity, probe.state_dim(), probe.n_agents(), probe.n_agents());
    explore_rng_ = make_rng(sys_.master_seed, streams::exploration, 0);
    replay_rng_ = make_rng(sys_.master_seed, kReplayStream, 0);
    log_.algorithm = to_string(cfg_.algorithm);
}

Scenario Trainer::scenario_for_episode(int e) const
{
    if (!cfg_.dynamic)
        return base_;
    const int epoch = e / cfg_.dynamic_period;
    if (epoch == 0)
        return base_;
    Rng rng = make_rng(sys_.master_seed, streams::topology, static_cast<std::uint64_t>(epoch));
    return regenerate_users(base_, sys_, rng);
}

void Trainer::update()
{
    const Batch batch = replay_.sample(static_cast<std::size_t>(cfg_.batch_size), replay_rng_);
    const RMat y = compute_targets(batch, ens_, cfg_, replay_rng_);
    for (int i = 0; i < ens_.n_agents(); ++i)
        critic_update(batch, ens_.agents[static_cast<std::size_t>(i)], y.row(i).transpose(), cfg_.algorithm);
    ++critic_updates_;
    const int delay = cfg_.algorithm == Algorithm::matd3 ? cfg_.policy_delay : 1;
    if (critic_updates_ % delay == 0)
    {
        for (int i = 0; i < ens_.n_agents(); ++i)
            actor_update(batch, i, ens_);
        soft_update(ens_, cfg_.tau);
        ++actor_updates_;
    }
}

void Trainer::run_episode()
{
    const int e = next_episode_;
    Environment env(sys_, env_opts_, scenario_for_episode(e));
    Rng ep_rng = make_rng(sys_.master_seed, streams::episode, static_cast<std::uint64_t>(e));
    env.reset(ep_rng);

    double reward_sum = 0.0, objective_sum = 0.0;
    RVec agent_sum = RVec::Zero(env.n_agents());
    for (int t = 0; t < cfg_.t_max; ++t)
    {
        const RVec s = env.state();
        RVec a = ens_.act(s).col(0);
        for (Eigen::Index i = 0; i < a.size(); ++i)
            a(i) = std::clamp(a(i) + normal(explore_rng_, 0.0, cfg_.exploration_noise), -1.0, 1.0);
        const StepResult r = env.step(a, ep_rng);
        replay_.push(s, env.state(), a, r.rewards);
        if (replay_.size() >= static_cast<std::size_t>(cfg_.batch_size))
            update();
        reward_sum += r.total_reward;
        objective_sum += r.rates.objective;
        agent_sum += r.rewards;
    }
    const double T = static_cast<double>(cfg_.t_max);
    log_.mean_reward.push_back(reward_sum / T);
    log_.mean_objective.push_back(objective_sum / T);
    const RVec mean_agent = agent_sum / T;
    log_.agent_reward.emplace_back(mean_agent.data(), mean_agent.data() + mean_agent.size());
    ++next_episode_;
}

void Trainer::run(int episode_end)
{
    const auto t0 = std::chrono::steady_clock::now();
    try
    {
        while (next_episode_ < episode_end)
        {
            run_episode();
            if (!checkpoint_dir.empty() && cfg_.checkpoint_every > 0 && next_episode_ % cfg_.checkpoint_every == 0)
            {
                const auto p = (std::filesystem::path(checkpoint_dir) /
                                ("checkpoint_" + log_.algorithm + "_" + std::to_string(next_episode_) + ".json"))
                                   .string();
                log_.checkpoints.push_back(p);
                save(p);
            }
        }
    }
    catch (const TrainingDivergence &err)
    {
        std::cerr << "training diverged at episode " << next_episode_ << ": " << err.what() << "\n";
        if (!checkpoint_dir.empty())
            save((std::filesystem::path(checkpoint_dir) / ("divergence_" + log_.algorithm + ".json")).string());
        throw;
    }
    log_.wall_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void Trainer::save(const std::string &path) const
{
    const std::string replay_path = path + ".replay.bin";
    replay_.write_binary(replay_path);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["system"] = to_json(sys_);
    j["train"] = to_json(cfg_);
    j["pipeline"] = to_json(env_opts_.pipeline);
    j["penalty_coefficient"] = env_opts_.penalty_coefficient;
    j["next_episode"] = next_episode_;
    j["critic_updates"] = critic_updates_;
    j["actor_updates"] = actor_updates_;
    j["rng"] = {{"exploration", rng_state(explore_rng_)}, {"replay", rng_state(replay_rng_)}};
    j["replay_file"] = std::filesystem::path(replay_path).filename().string();
    j["scenario"] = to_json(base_);
    j["ensemble"] = to_json(ens_);
    j["log"] = {{"algorithm", log_.algorithm},
                {"mean_reward", log_.mean_reward},
                {"mean_objective", log_.mean_objective},
                {"agent_reward", log_.agent_reward}};
    write_json_file(path, j);
}

Trainer Trainer::load(const std::string &path)
{
    const json j = read_json_file(path);
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw std::invalid_argument("checkpoint: unsupported schema version");
    EnvOptions env;
    env.pipeline = pipeline_options_from_json(j.at("pipeline"));
    env.penalty_coefficient = j.at("penalty_coefficient").get<double>();
    Trainer t(system_config_from_json(j.at("system")), train_config_from_json(j.at("train")), env);
    t.next_episode_ = j.at("next_episode").get<int>();
    t.critic_updates_ = j.at("critic_updates").get<long long>();
    t.actor_updates_ = j.at("actor_updates").get<long long>();
    set_rng_state(t.explore_rng_, j.at("rng").at("exploration").get<std::string>());
    set_rng_state(t.replay_rng_, j.at("rng").at("replay").get<std::string>());
    t.ens_ = ensemble_from_json(j.at("ensemble"));
    const auto replay_path = std::filesystem::path(path).parent_path() / j.at("replay_file").get<std::string>();
    t.replay_.read_binary(replay_path.string());
    const json &lg = j.at("log");
    t.log_.algorithm = lg.at("algorithm").get<std::string>();
    t.log_.mean_reward = lg.at("mean_reward").get<std::vector<double>>();
    t.log_.mean_objective = lg.at("mean_objective").get<std::vector<double>>();
    t.log_.agent_reward = lg.at("agent_reward").get<std::vector<std::vector<double>>>();
    return t;
}

TrainLog train(const SystemConfig &sys, const TrainConfig &cfg, const EnvOptions &env,
               const std::string &checkpoint_dir)
{
    Trainer t(sys, cfg, env);
    t.checkpoint_dir = checkpoint_dir;
    t.run(cfg.episodes);
    return t.log();
}

AllocationPolicy actor_policy(const AgentEnsemble &ens)
{
    return [ens](const Environment &env, Rng &) { return env.to_allocation(ens.act(env.state()).col(0)); };
}

AllocationPolicy baseline_policy(BaselineScheme scheme)
{
    return [scheme](const Environment &env, Rng &rng) {
        return baseline_allocation(scheme, env.config(), env.beamformers(), rng);
    };
}

EvalResult evaluate_policy(const SystemConfig &sys, const EnvOptions &opts, const Scenario &scenario,
                           const AllocationPolicy &policy, int episodes, int t_max, std::uint64_t seed,
                           const std::string &name)
{
    if (episodes < 1 || t_max < 1)
        throw std::invalid_argument("evaluate_policy: need at least one episode and step");
    EvalResult out;
    out.scheme = name;
    out.episodes = episodes;
    std::vector<double> objective;
    std::uint64_t digest = 0x9e3779b97f4a7c15ULL;
    for (int e = 0; e < episodes; ++e)
    {
        Environment env(sys, opts, scenario);
        Rng env_rng = make_rng(seed, streams::heldout, static_cast<std::uint64_t>(e));
        Rng pol_rng = make_rng(seed, streams::baseline, static_cast<std::uint64_t>(e));
        env.reset(env_rng);
        digest = (digest ^ env.channel_digest()) * 0x100000001b3ULL;
        double r = 0.0, o = 0.0;
        for (int t = 0; t < t_max; ++t)
        {
            const StepResult s = env.step_allocation(policy(env, pol_rng), env_rng);
            r += s.total_reward;
            o += s.rates.objective;
        }
        out.episode_reward.push_back(r / t_max);
        objective.push_back(o / t_max);
    }
    auto stats = [](const std::vector<double> &v, double &mean, double &se) {
        const double n = static_cast<double>(v.size());
        mean = 0.0;
        for (double x : v)
            mean += x;
        mean /= n;
        double ss = 0.0;
        for (double x : v)
            ss += (x - mean) * (x - mean);
        se = v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    };
    stats(out.episode_reward, out.mean_reward, out.reward_stderr);
    stats(objective, out.mean_objective, out.objective_stderr);
    out.digest = digest;
    return out;
}

} // namespace nafd::rl
