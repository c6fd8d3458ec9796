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

#include "nafd/rl/agents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nafd/errors.hpp"

namespace nafd::rl
{

std::string to_string(Algorithm a)
{
    return a == Algorithm::matd3 ? "matd3" : "maddpg";
}

Algorithm algorithm_from_string(const std::string &s)
{
    if (s == "matd3")
        return Algorithm::matd3;
    if (s == "maddpg")
        return Algorithm::maddpg;
    throw std::invalid_argument("unknown algorithm: " + s);
}

void TrainConfig::validate() const
{
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("TrainConfig: gamma must lie in (0, 1)");
    if (!(tau > 0.0 && tau <= 1.0))
        throw std::invalid_argument("TrainConfig: tau must lie in (0, 1]");
    if (policy_delay < 1 || t_max < 1 || batch_size < 1 || episodes < 0 || hidden < 1)
        throw std::invalid_argument("TrainConfig: counts must be positive");
    if (replay_capacity < static_cast<std::size_t>(batch_size))
        throw std::invalid_argument("TrainConfig: replay capacity below batch size");
    if (!(lr > 0.0) || target_noise < 0.0 || exploration_noise < 0.0)
        throw std::invalid_argument("TrainConfig: invalid learning rate or noise");
    if (dynamic && dynamic_period < 1)
        throw std::invalid_argument("TrainConfig: dynamic period must be positive");
}

RMat critic_input(const RMat &s, const RMat &a)
{
    if (s.cols() != a.cols())
        throw std::invalid_argument("critic_input: batch size mismatch");
    RMat X(s.rows() + a.rows(), s.cols());
    X.topRows(s.rows()) = s;
    X.bottomRows(a.rows()) = a;
    return X;
}

namespace
{
RMat joint_actions(const RMat &states, const AgentEnsemble &ens, bool target)
{
    RMat a(ens.n_agents(), states.cols());
    for (int i = 0; i < ens.n_agents(); ++i)
    {
        const Agent &ag = ens.agents[static_cast<std::size_t>(i)];
        const Mlp &net = target ? ag.actor_target : ag.actor;
        a.row(i) = net.forward(states.middleRows(ag.obs_offset, ag.obs_dim));
    }
    return a;
}

void check_finite(double v, const char *what)
{
    if (!std::isfinite(v))
        throw TrainingDivergence(std::string(what) + " became non-finite");
}
} // namespace

RMat AgentEnsemble::act(const RMat &states) const
{
    return joint_actions(states, *this, false);
}

RMat AgentEnsemble::act_target(const RMat &states) const
{
    return joint_actions(states, *this, true);
}

AgentEnsemble make_ensemble(const std::vector<int> &obs_offset, const std::vector<int> &obs_dim, int state_dim,
                            const TrainConfig &cfg, Rng &rng)
{
    if (obs_offset.size() != obs_dim.size() || obs_dim.empty())
        throw std::invalid_argument("make_ensemble: inconsistent agent layout");
    AgentEnsemble e;
    e.algorithm = cfg.algorithm;
    e.state_dim = state_dim;
    const int n = static_cast<int>(obs_dim.size());
    const int h = cfg.hidden;
    for (int i = 0; i < n; ++i)
    {
        Agent a;
        a.obs_offset = obs_offset[static_cast<std::size_t>(i)];
        a.obs_dim = obs_dim[static_cast<std::size_t>(i)];
        if (a.obs_offset < 0 || a.obs_offset + a.obs_dim > state_dim)
            throw std::invalid_argument("make_ensemble: observation slice outside the state");
        a.actor = Mlp({a.obs_dim, h, h, 1}, Activation::tanh, rng);
        a.critic1 = Mlp({state_dim + n, h, h, 1}, Activation::linear, rng);
        a.critic2 = Mlp({state_dim + n, h, h, 1}, Activation::linear, rng);
        a.actor_target = a.actor;
        a.critic1_target = a.critic1;
        a.critic2_target = a.critic2;
        a.actor_opt = Adam(a.actor.param_count(), cfg.lr);
        a.critic1_opt = Adam(a.critic1.param_count(), cfg.lr);
        a.critic2_opt = Adam(a.critic2.param_count(), cfg.lr);
        e.agents.push_back(std::move(a));
    }
    return e;
}

double td3_target(double r, double gamma, double q1, double q2)
{
    return r + gamma * std::min(q1, q2);
}

RMat smoothed_target_actions(const RMat &s2, const AgentEnsemble &ens, const TrainConfig &cfg, Rng &rng)
{
    RMat a = ens.act_target(s2);
    if (ens.algorithm == Algorithm::matd3 && cfg.target_noise > 0.0)
    {
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            for (Eigen::Index r = 0; r < a.rows(); ++r)
            {
                const double eps =
                    std::clamp(normal(rng, 0.0, cfg.target_noise), -cfg.target_noise_clip, cfg.target_noise_clip);
                a(r, c) = std::clamp(a(r, c) + eps, -1.0, 1.0);
            }
    }
    return a;
}

RMat compute_targets(const Batch &b, const AgentEnsemble &ens, const TrainConfig &cfg, Rng &rng)
{
    const RMat a2 = smoothed_target_actions(b.s2, ens, cfg, rng);
    const RMat X2 = critic_input(b.s2, a2);
    RMat y(ens.n_agents(), b.s.cols());
    for (int i = 0; i < ens.n_agents(); ++i)
    {
        const Agent &ag = ens.agents[static_cast<std::size_t>(i)];
        const RMat q1 = ag.critic1_target.forward(X2);
        if (ens.algorithm == Algorithm::matd3)
        {
            const RMat q2 = ag.critic2_target.forward(X2);
            for (Eigen::Index c = 0; c < y.cols(); ++c)
                y(i, c) = td3_target(b.r(i, c), cfg.gamma, q1(0, c), q2(0, c));
        }
        else
        {
            y.row(i) = b.r.row(i) + cfg.gamma * q1.row(0);
        }
    }
    return y;
}

double critic_loss(const Mlp &critic, const RMat &X, const RVec &y, RVec &grad)
{
    Mlp::Tape tape;
    const RMat q = critic.forward(X, tape);
    const RMat diff = q - y.transpose();
    const double n = static_cast<double>(X.cols());
    const double loss = diff.squaredNorm() / n;
    critic.backward(tape, 2.0 * diff / n, grad);
    return loss;
}

namespace
{
double fit_critic(Mlp &critic, Adam &opt, const RMat &X, const RVec &y)
{
    RVec grad = RVec::Zero(critic.param_count());
    const double loss = critic_loss(critic, X, y, grad);
    check_finite(loss, "critic loss");
    opt.step(critic.params(), grad);
    return loss;
}
} // namespace

CriticLosses critic_update(const Batch &b, Agent &agent, const RVec &y, Algorithm algorithm)
{
    const RMat X = critic_input(b.s, b.a);
    CriticLosses out;
    out.loss1 = fit_critic(agent.critic1, agent.critic1_opt, X, y);
    if (algorithm == Algorithm::matd3)
        out.loss2 = fit_critic(agent.critic2, agent.critic2_opt, X, y);
    return out;
}

double actor_loss(const Batch &b, int i, const AgentEnsemble &ens, RVec &grad)
{
    const Agent &ag = ens.agents.at(static_cast<std::size_t>(i));
    Mlp::Tape actor_tape;
    const RMat own = ag.actor.forward(b.s.middleRows(ag.obs_offset, ag.obs_dim), actor_tape);
    RMat a = b.a;
    a.row(i) = own;
    Mlp::Tape critic_tape;
    const RMat q = ag.critic1.forward(critic_input(b.s, a), critic_tape);
    const double n = static_cast<double>(b.s.cols());
    RVec critic_grad = RVec::Zero(ag.critic1.param_count());
    const RMat dX = ag.critic1.backward(critic_tape, RMat::Constant(1, q.cols(), -1.0 / n), critic_grad);
    ag.actor.backward(actor_tape, dX.row(ens.state_dim + i), grad);
    return -q.mean();
}

double actor_update(const Batch &b, int i, AgentEnsemble &ens)
{
    Agent &ag = ens.agents.at(static_cast<std::size_t>(i));
    RVec grad = RVec::Zero(ag.actor.param_count());
    const double loss = actor_loss(b, i, ens, grad);
    check_finite(loss, "actor objective");
    ag.actor_opt.step(ag.actor.params(), grad);
    return loss;
}

void soft_update(Mlp &target, const Mlp &source, double tau)
{
    if (target.param_count() != source.param_count())
        throw std::invalid_argument("soft_update: parameter count mismatch");
    target.params() = tau * source.params() + (1.0 - tau) * target.params();
}

void soft_update(AgentEnsemble &ens, double tau)
{
    for (auto &a : ens.agents)
    {
        soft_update(a.actor_target, a.actor, tau);
        soft_update(a.critic1_target, a.critic1, tau);
        if (ens.algorithm == Algorithm::matd3)
            soft_update(a.critic2_target, a.critic2, tau);
    }
}

} // namespace nafd::rl
