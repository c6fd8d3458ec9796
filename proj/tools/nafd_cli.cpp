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

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nafd/errors.hpp"
#include "nafd/experiments.hpp"

namespace
{

enum Exit : int
{
    ok = 0,
    validation_failed = 1,
    bad_input = 2,
    diverged = 3,
    missing_checkpoint = 4,
    runtime_failure = 5
};

struct CommonFlags
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = "out";
};

void add_common(CLI::App *cmd, CommonFlags &f)
{
    cmd->add_option("--config", f.config, "JSON experiment config; defaults are used when omitted");
    cmd->add_option("--seed", f.seed, "Master seed override");
    cmd->add_option("--out", f.out, "Output directory")->capture_default_str();
}

nafd::ExperimentConfig resolve(const CommonFlags &f)
{
    nafd::ExperimentConfig cfg = f.config.empty() ? nafd::ExperimentConfig{} : nafd::load_experiment_config(f.config);
    if (f.seed)
        cfg.system.master_seed = *f.seed;
    return cfg;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"nafd: hybrid MIMO estimation and multi-agent power allocation experiments"};
    app.require_subcommand(0, 1);
    bool dump_config = false;
    app.add_flag("--dump-config", dump_config, "Print the default experiment config as JSON and exit");

    CommonFlags nmse_f, train_f, compare_f, validate_f;
    std::optional<int> trials, episodes, compare_episodes, mc_trials;
    std::optional<std::string> algorithm;
    std::string resume;
    bool inject_flip = false;

    auto *nmse = app.add_subcommand("nmse-sweep", "Inter-AP channel estimation NMSE versus SNR and RF chains");
    add_common(nmse, nmse_f);
    nmse->add_option("--trials", trials, "Trials per (n_rf, SNR) cell")->check(CLI::PositiveNumber);

    auto *train = app.add_subcommand("train", "Train MATD3 or MADDPG power allocation agents");
    add_common(train, train_f);
    train->add_option("--algorithm", algorithm, "matd3 or maddpg")->check(CLI::IsMember({"matd3", "maddpg"}));
    train->add_option("--episodes", episodes, "Total training episodes")->check(CLI::PositiveNumber);
    train->add_option("--resume", resume, "Continue from a checkpoint JSON");

    auto *compare = app.add_subcommand("compare", "Evaluate learned and baseline schemes on held-out channels");
    add_common(compare, compare_f);
    compare->add_option("--episodes", compare_episodes, "Held-out episodes")->check(CLI::PositiveNumber);

    auto *validate = app.add_subcommand("validate", "Run the invariant suites and write a JSON report");
    add_common(validate, validate_f);
    validate->add_option("--trials", mc_trials, "Monte Carlo trials of the Jensen suite")->check(CLI::Range(100, 1 << 30));
    validate->add_flag("--inject-dee-sign-flip", inject_flip, "Test hook: flip the sign of the DL estimation-error term");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (dump_config)
        {
            std::cout << nafd::to_json(nafd::ExperimentConfig{}).dump(2) << "\n";
            return ok;
        }
        if (*nmse)
        {
            auto cfg = resolve(nmse_f);
            if (trials)
                cfg.nmse.trials = *trials;
            nafd::cmd_nmse_sweep(cfg, nmse_f.out);
            std::cout << "wrote " << nmse_f.out << "/nmse_sweep.csv\n";
        }
        else if (*train)
        {
            auto cfg = resolve(train_f);
            if (algorithm)
                cfg.train.algorithm = nafd::rl::algorithm_from_string(*algorithm);
            if (episodes)
                cfg.train.episodes = *episodes;
            const auto log = nafd::cmd_train(cfg, train_f.out, resume);
            std::cout << "trained " << log.algorithm << " for " << log.episodes() << " episodes; final-100 mean reward "
                      << log.tail_mean(100) << "\n";
        }
        else if (*compare)
        {
            auto cfg = resolve(compare_f);
            if (compare_episodes)
                cfg.compare.episodes = *compare_episodes;
            for (const auto &r : nafd::cmd_compare(cfg, compare_f.out))
                std::cout << r.scheme << ": reward " << r.mean_reward << " +/- " << r.reward_stderr << ", sum rate "
                          << r.mean_objective << "\n";
        }
        else if (*validate)
        {
            auto cfg = resolve(validate_f);
            if (mc_trials)
                cfg.validate.mc_trials = *mc_trials;
            nafd::FaultInjection fault;
            fault.flip_dee_sign = inject_flip;
            const auto rep = nafd::cmd_validate(cfg, validate_f.out, fault);
            for (const auto &s : rep.suites)
                std::cout << (s.passed ? "PASS " : "FAIL ") << s.name << "\n";
            return rep.passed() ? ok : validation_failed;
        }
        else
        {
            std::cout << app.help();
        }
    }
    catch (const nafd::TrainingDivergence &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return diverged;
    }
    catch (const nafd::MissingCheckpoint &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return missing_checkpoint;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return runtime_failure;
    }
    return ok;
}
