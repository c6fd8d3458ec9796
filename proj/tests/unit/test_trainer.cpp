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

#include <filesystem>

#include "nafd/errors.hpp"
#include "nafd/rl/trainer.hpp"

using namespace nafd;
using namespace nafd::rl;
namespace fs = std::filesystem;

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
    c.master_seed = 99;
    return c;
}

TrainConfig quick(Algorithm alg = Algorithm::matd3)
{
    TrainConfig t;
    t.algorithm = alg;
    t.episodes = 4;
    t.t_max = 5;
    t.batch_size = 4;
    t.hidden = 8;
    t.replay_capacity = 1000;
    return t;
}

fs::path scratch(const std::string &name)
{
    const fs::path p = fs::temp_directory_path() / ("nafd_trainer_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}
} // namespace

TEST_CASE("single episode fills the buffer once per step")
{
    TrainConfig t = quick();
    t.episodes = 1;
    t.t_max = 3;
    Trainer tr(tiny(), t, {});
    tr.run(1);
    CHECK(tr.replay().size() == 3);
    CHECK(tr.log().episodes() == 1);
    CHECK(tr.next_episode() == 1);
    CHECK(tr.critic_updates() == 0); // buffer never reached a batch of 4
}

TEST_CASE("update schedule follows the policy delay")
{
    TrainConfig t = quick();
    t.t_max = 9;
    t.batch_size = 2;
    Trainer m(tiny(), t, {});
    m.run(1);
    CHECK(m.critic_updates() == 8);
    CHECK(m.actor_updates() == 4);

    t.algorithm = Algorithm::maddpg;
    Trainer d(tiny(), t, {});
    d.run(1);
    CHECK(d.critic_updates() == 8);
    CHECK(d.actor_updates() == 8);
    CHECK(d.log().algorithm == "maddpg");
    CHECK(m.log().algorithm == "matd3");
}

TEST_CASE("training is deterministic for a seed")
{
    const auto a = train(tiny(), quick(), {});
    const auto b = train(tiny(), quick(), {});
    CHECK(a.csv() == b.csv());
    SystemConfig other = tiny();
    other.master_seed = 100;
    CHECK(train(other, quick(), {}).csv() != a.csv());
    CHECK(a.csv().rfind("episode,algorithm,mean_reward,mean_objective,agent_0,agent_1,agent_2,agent_3\n", 0) == 0);
}

TEST_CASE("resume reproduces an uninterrupted run")
{
    const fs::path dir = scratch("resume");
    TrainConfig t = quick();
    t.episodes = 14;
    Trainer full(tiny(), t, {});
    full.run(14);

    Trainer first(tiny(), t, {});
    first.run(4);
    const std::string path = (dir / "ck.json").string();
    first.save(path);
    CHECK(fs::exists(path + ".replay.bin"));
    Trainer resumed = Trainer::load(path);
    CHECK(resumed.next_episode() == 4);
    CHECK(resumed.ensemble() == first.ensemble());
    CHECK(resumed.replay() == first.replay());
    resumed.run(14);
    CHECK(resumed.log().csv() == full.log().csv());
    CHECK(resumed.ensemble() == full.ensemble());
    fs::remove_all(dir);
}

TEST_CASE("periodic checkpoints")
{
    const fs::path dir = scratch("periodic");
    TrainConfig t = quick();
    t.checkpoint_every = 2;
    Trainer tr(tiny(), t, {});
    tr.checkpoint_dir = dir.string();
    tr.run(4);
    CHECK(tr.log().checkpoints.size() == 2);
    for (const auto &p : tr.log().checkpoints)
        CHECK(fs::exists(p));
    fs::remove_all(dir);
}

TEST_CASE("dynamic topology regenerates users per period")
{
    TrainConfig t = quick();
    t.dynamic = true;
    t.dynamic_period = 3;
    Trainer tr(tiny(), t, {});
    const Scenario s0 = tr.scenario_for_episode(0), s2 = tr.scenario_for_episode(2), s3 = tr.scenario_for_episode(3);
    CHECK(s0 == tr.base_scenario());
    CHECK(s2 == s0);
    CHECK(!(s3 == s0));
    CHECK(s3.tap == s0.tap);
    CHECK(s3.rap == s0.rap);
    CHECK(tr.scenario_for_episode(4) == s3);
}

TEST_CASE("held-out evaluation uses common channels across policies")
{
    const SystemConfig c = tiny();
    Rng topo = make_rng(c.master_seed, streams::topology, 0);
    const Scenario s = generate_topology(c, topo);
    const auto a = evaluate_policy(c, {}, s, baseline_policy(BaselineScheme::ul_max), 3, 4, 7, "ul_max");
    const auto b = evaluate_policy(c, {}, s, baseline_policy(BaselineScheme::ul_equal), 3, 4, 7, "ul_equal");
    const auto a2 = evaluate_policy(c, {}, s, baseline_policy(BaselineScheme::ul_max), 3, 4, 7, "ul_max");
    CHECK(a.digest == b.digest);
    CHECK(a.mean_reward == a2.mean_reward);
    CHECK(a.episode_reward.size() == 3);
    CHECK(a.reward_stderr >= 0.0);
    const auto c8 = evaluate_policy(c, {}, s, baseline_policy(BaselineScheme::ul_max), 3, 4, 8, "ul_max");
    CHECK(c8.digest != a.digest);

    Trainer tr(c, quick(), {});
    const auto act = evaluate_policy(c, {}, s, actor_policy(tr.ensemble()), 3, 4, 7, "matd3");
    CHECK(act.digest == a.digest);
    CHECK(std::isfinite(act.mean_reward));
}

TEST_CASE("missing checkpoint file")
{
    CHECK_THROWS(Trainer::load((fs::temp_directory_path() / "nafd_no_such_checkpoint.json").string()));
}
