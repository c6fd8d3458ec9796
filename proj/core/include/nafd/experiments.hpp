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
#include <map>
#include <string>
#include <vector>

#include "nafd/io.hpp"
#include "nafd/rates.hpp"
#include "nafd/rl/trainer.hpp"

namespace nafd
{

struct NmseSweepConfig
{
    int n_ant = 32;
    std::vector<int> n_rf{4, 10, 0}; // 0 selects the full-digital row (n_rf = n_ant)
    std::vector<double> snr_db{-10, -5, 0, 5, 10, 15, 20};
    int trials = 500;
    int n_paths = 3;
};

struct NmseRow
{
    double snr_db = 0.0;
    int n_rf = 0;
    int n_ant = 0;
    int trials = 0;
    double nmse_db = 0.0;
};

/// Inter-AP estimation NMSE, E{||H_hat - H||^2 / ||H||^2}, with unit
/// large-scale gain, unit noise and pilot SNR rho. Trial t uses the same
/// channel in every cell. Throws CapacityError for n_ant > kMaxCovarianceAntennas.
std::vector<NmseRow> run_nmse_sweep(const NmseSweepConfig &cfg, std::uint64_t seed);

/// snr_db,n_rf,n_ant,trials,nmse_db
std::string nmse_csv(const std::vector<NmseRow> &rows);

struct CompareConfig
{
    int episodes = 100;
    int t_max = 50;
    std::uint64_t heldout_seed = 7;
    std::vector<std::string> schemes{"matd3", "maddpg", "ul_random", "ul_equal", "ul_max"};
    std::map<std::string, std::string> checkpoints; // scheme -> checkpoint path
};

struct ValidateConfig
{
    int mc_trials = 400;
    int kkt_instances = 50;
    int mmse_trials = 2000;
    int gradient_configs = 10;
    // Jensen suite pilot power; a weak pilot makes estimation error dominant.
    double jensen_pilot_dbm = 0.0;
};

struct ExperimentConfig
{
    SystemConfig system;
    rl::TrainConfig train;
    rl::EnvOptions env;
    NmseSweepConfig nmse;
    CompareConfig compare;
    ValidateConfig validate;

    void validate_fields() const;
};

json to_json(const ExperimentConfig &cfg);
/// Missing sections and keys keep their defaults; unknown keys are rejected.
ExperimentConfig experiment_config_from_json(const json &j);
ExperimentConfig load_experiment_config(const std::string &path);

/// Writes <out>/nmse_sweep.csv.
std::vector<NmseRow> cmd_nmse_sweep(const ExperimentConfig &cfg, const std::string &out_dir);

/// Writes <out>/train_<algorithm>.csv and <out>/checkpoint_<algorithm>.json.
/// A non-empty resume path continues from that checkpoint.
rl::TrainLog cmd_train(const ExperimentConfig &cfg, const std::string &out_dir, const std::string &resume = "");

/// Writes <out>/compare.csv. Learned schemes read their checkpoint from
/// compare.checkpoints or <out>/checkpoint_<scheme>.json; throws
/// MissingCheckpoint when absent.
std::vector<rl::EvalResult> cmd_compare(const ExperimentConfig &cfg, const std::string &out_dir);

/// scheme,episodes,mean_reward,reward_stderr,mean_objective,objective_stderr,channel_digest
std::string compare_csv(const std::vector<rl::EvalResult> &rows);

struct SuiteResult
{
    std::string name;
    bool passed = false;
    json detail;
};

struct ValidationReport
{
    std::vector<SuiteResult> suites;
    bool passed() const;
    json to_json() const;
};

/// Invariant suites: waterfill_kkt, kron_factorization, mmse_consistency,
/// jensen, zf_exactness, gradient_check, td3_mechanics.
ValidationReport run_validation(const ExperimentConfig &cfg, const FaultInjection &fault = {});

/// Writes <out>/validate.json.
ValidationReport cmd_validate(const ExperimentConfig &cfg, const std::string &out_dir,
                              const FaultInjection &fault = {});

} // namespace nafd
