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

#include <benchmark/benchmark.h>

#include "nafd/channel.hpp"
#include "nafd/estimation.hpp"
#include "nafd/rates.hpp"
#include "nafd/rl/agents.hpp"
#include "nafd/rl/environment.hpp"

using namespace nafd;

static void BM_Waterfill(benchmark::State &state)
{
    const int n = static_cast<int>(state.range(0));
    RVec lambda(n);
    for (int i = 0; i < n; ++i)
        lambda(i) = 1.0 / (1.0 + i);
    for (auto _ : state)
        benchmark::DoNotOptimize(waterfill(lambda, 10.0, 1.0, 9.0, n));
}
BENCHMARK(BM_Waterfill)->Arg(9)->Arg(100)->Arg(1024);

static void BM_CouplingLowRank(benchmark::State &state)
{
    const int n = static_cast<int>(state.range(0));
    Rng rng(1);
    const InterApDraw d = sample_interap_channel(1.0, 3, n, rng);
    const CMat F = interap_covariance_factor(d.angles, 1.0, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(optimal_coupling_lowrank(F, 10.0, 1.0, 4, true));
}
BENCHMARK(BM_CouplingLowRank)->Arg(8)->Arg(16)->Arg(32);

static void BM_InterApMmse(benchmark::State &state)
{
    const int n = static_cast<int>(state.range(0));
    Rng rng(2);
    const InterApDraw d = sample_interap_channel(1.0, 3, n, rng);
    const CMat F = interap_covariance_factor(d.angles, 1.0, n);
    const CouplingDesign cd = optimal_coupling_lowrank(F, 10.0, 1.0, 3);
    const InterApEstimator est = make_interap_estimator_lowrank(F, cd.A, 10.0, 1.0, false);
    const CVec y = simulate_coupled_pilot(d.channel, cd.A, 10.0, 1.0, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(est.estimate(y));
}
BENCHMARK(BM_InterApMmse)->Arg(6)->Arg(16);

static void BM_EnvironmentStep(benchmark::State &state)
{
    SystemConfig cfg;
    Rng rng(3);
    rl::Environment env(cfg, {}, generate_topology(cfg, rng));
    env.reset(rng);
    const RVec raw = RVec::Zero(env.n_agents());
    for (auto _ : state)
        benchmark::DoNotOptimize(env.step(raw, rng));
}
BENCHMARK(BM_EnvironmentStep)->Unit(benchmark::kMillisecond);

static void BM_CriticUpdate(benchmark::State &state)
{
    const int batch = static_cast<int>(state.range(0));
    Rng rng(4);
    rl::TrainConfig tc;
    const int state_dim = 320;
    rl::AgentEnsemble ens = rl::make_ensemble({0, 160}, {160, 160}, state_dim, tc, rng);
    rl::Batch b;
    b.s = RMat::Random(state_dim, batch);
    b.s2 = RMat::Random(state_dim, batch);
    b.a = RMat::Random(2, batch);
    b.r = RMat::Random(2, batch);
    const RVec y = RVec::Random(batch);
    for (auto _ : state)
        benchmark::DoNotOptimize(rl::critic_update(b, ens.agents[0], y, rl::Algorithm::matd3));
}
BENCHMARK(BM_CriticUpdate)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
