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

#include "nafd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nafd/errors.hpp"

namespace nafd
{

namespace fs = std::filesystem;

std::vector<NmseRow> run_nmse_sweep(const NmseSweepConfig &cfg, std::uint64_t seed)
{
    const int n = cfg.n_ant;
    if (n > kMaxCovarianceAntennas)
        throw CapacityError("nmse sweep: n_ant = " + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(kMaxCovarianceAntennas));
    if (n < 1 || cfg.trials < 1 || cfg.n_paths < 1 || cfg.n_rf.empty() || cfg.snr_db.empty())
        throw std::invalid_argument("nmse sweep: empty grid or non-positive size");
    std::vector<int> chains;
    for (int r : cfg.n_rf)
    {
        const int c = r == 0 ? n : r;
        if (c < 1 || c > n)
            throw std::invalid_argument("nmse sweep: n_rf must lie in [1, n_ant] or be 0");
        chains.push_back(c);
    }

    const std::size_t cells = chains.size() * cfg.snr_db.size();
    std::vector<double> acc(cells, 0.0);
    for (int t = 0; t < cfg.trials; ++t)
    {
        Rng ch_rng = make_rng(seed, streams::nmse_trial, static_cast<std::uint64_t>(t));
        const InterApDraw draw = sample_interap_channel(1.0, cfg.n_paths, n, ch_rng);
        const CMat F = interap_covariance_factor(draw.angles, 1.0, n);
        const std::uint64_t trial_seed = derive_seed(seed, streams::nmse_trial, static_cast<std::uint64_t>(t));
        for (std::size_t r = 0; r < chains.size(); ++r)
            for (std::size_t s = 0; s < cfg.snr_db.size(); ++s)
            {
                const std::size_t cell = r * cfg.snr_db.size() + s;
                const double rho = std::pow(10.0, cfg.snr_db[s] / 10.0);
                const CouplingDesign design = optimal_coupling_lowrank(F, rho, 1.0, chains[r], false);
                Eigen::Index rows = 0;
                while (rows < design.sigma_a.size() && rows < design.A.rows() && design.sigma_a(rows) > 0.0)
                    ++rows;
                const CMat A = design.A.topRows(rows);
                const InterApEstimator est = make_interap_estimator_lowrank(F, A, rho, 1.0, false);
                Rng noise = make_rng(trial_seed, streams::pilot, cell);
                const CVec y = simulate_coupled_pilot(draw.channel, A, rho, 1.0, noise);
                acc[cell] += nmse(est.estimate(y), draw.channel);
            }
    }

    std::vector<NmseRow> rows;
    for (std::size_t r = 0; r < chains.size(); ++r)
        for (std::size_t s = 0; s < cfg.snr_db.size(); ++s)
        {
            const double mean = acc[r * cfg.snr_db.size() + s] / cfg.trials;
            rows.push_back({cfg.snr_db[s], chains[r], n, cfg.trials, 10.0 * std::log10(mean)});
        }
    return rows;
}

std::string nmse_csv(const std::vector<NmseRow> &rows)
{
    std::ostringstream os;
    os << "snr_db,n_rf,n_ant,trials,nmse_db\n";
    for (const auto &r : rows)
        os << csv_number(r.snr_db) << "," << r.n_rf << "," << r.n_ant << "," << r.trials << ","
           << csv_number(r.nmse_db) << "\n";
    return os.str();
}

// ---------------------------------------------------------------- config

namespace
{
void reject_unknown(const json &j, const std::set<std::string> &allowed, const std::string &where)
{
    if (!j.is_object())
        throw std::invalid_argument(where + ": expected an object");
    for (const auto &[key, _] : j.items())
        if (!allowed.count(key))
            throw std::invalid_argument(where + ": unknown key '" + key + "'");
}

template <class T>
void read_opt(const json &j, const char *key, T &dst)
{
    if (j.contains(key))
        dst = j.at(key).get<T>();
}
} // namespace

void ExperimentConfig::validate_fields() const
{
    system.validate();
    train.validate();
    if (nmse.n_rf.empty() || nmse.snr_db.empty() || nmse.trials < 1)
        throw std::invalid_argument("config: nmse grids must be non-empty");
    if (compare.schemes.empty() || compare.episodes < 1 || compare.t_max < 1)
        throw std::invalid_argument("config: compare needs schemes and positive episode counts");
    for (const auto &s : compare.schemes)
        if (s != "matd3" && s != "maddpg")
            (void)rl::baseline_from_string(s);
    if (validate.mc_trials < 100 || validate.mmse_trials < 2 || validate.gradient_configs < 1 ||
        validate.kkt_instances < 1)
        throw std::invalid_argument("config: validate trial counts too small");
    if (!(env.penalty_coefficient >= 0.0))
        throw std::invalid_argument("config: penalty_coefficient must be non-negative");
}

json to_json(const ExperimentConfig &c)
{
    json j;
    j["schema_version"] = kSchemaVersion;
    j["system"] = to_json(c.system);
    j["train"] = to_json(c.train);
    j["environment"] = {{"pipeline", to_json(c.env.pipeline)}, {"penalty_coefficient", c.env.penalty_coefficient}};
    j["nmse"] = {{"n_ant", c.nmse.n_ant},
                 {"n_rf", c.nmse.n_rf},
                 {"snr_db", c.nmse.snr_db},
                 {"trials", c.nmse.trials},
                 {"n_paths", c.nmse.n_paths}};
    j["compare"] = {{"episodes", c.compare.episodes},
                    {"t_max", c.compare.t_max},
                    {"heldout_seed", c.compare.heldout_seed},
                    {"schemes", c.compare.schemes},
                    {"checkpoints", c.compare.checkpoints}};
    j["validate"] = {{"mc_trials", c.validate.mc_trials},
                     {"kkt_instances", c.validate.kkt_instances},
                     {"mmse_trials", c.validate.mmse_trials},
                     {"gradient_configs", c.validate.gradient_configs},
                     {"jensen_pilot_dbm", c.validate.jensen_pilot_dbm}};
    return j;
}

ExperimentConfig experiment_config_from_json(const json &j)
{
    reject_unknown(j, {"schema_version", "system", "train", "environment", "nmse", "compare", "validate"}, "config");
    if (j.contains("schema_version") && j.at("schema_version").get<int>() != kSchemaVersion)
        throw std::invalid_argument("config: unsupported schema version");
    ExperimentConfig c;
    if (j.contains("system"))
        c.system = system_config_from_json(j.at("system"));
    if (j.contains("train"))
        c.train = train_config_from_json(j.at("train"));
    if (j.contains("environment"))
    {
        const json &e = j.at("environment");
        reject_unknown(e, {"pipeline", "penalty_coefficient"}, "config.environment");
        if (e.contains("pipeline"))
            c.env.pipeline = pipeline_options_from_json(e.at("pipeline"));
        read_opt(e, "penalty_coefficient", c.env.penalty_coefficient);
    }
    if (j.contains("nmse"))
    {
        const json &e = j.at("nmse");
        reject_unknown(e, {"n_ant", "n_rf", "snr_db", "trials", "n_paths"}, "config.nmse");
        read_opt(e, "n_ant", c.nmse.n_ant);
        read_opt(e, "n_rf", c.nmse.n_rf);
        read_opt(e, "snr_db", c.nmse.snr_db);
        read_opt(e, "trials", c.nmse.trials);
        read_opt(e, "n_paths", c.nmse.n_paths);
    }
    if (j.contains("compare"))
    {
        const json &e = j.at("compare");
        reject_unknown(e, {"episodes", "t_max", "heldout_seed", "schemes", "checkpoints"}, "config.compare");
        read_opt(e, "episodes", c.compare.episodes);
        read_opt(e, "t_max", c.compare.t_max);
        read_opt(e, "heldout_seed", c.compare.heldout_seed);
        read_opt(e, "schemes", c.compare.schemes);
        read_opt(e, "checkpoints", c.compare.checkpoints);
    }
    if (j.contains("validate"))
    {
        const json &e = j.at("validate");
        reject_unknown(e, {"mc_trials", "kkt_instances", "mmse_trials", "gradient_configs", "jensen_pilot_dbm"},
                       "config.validate");
        read_opt(e, "mc_trials", c.validate.mc_trials);
        read_opt(e, "kkt_instances", c.validate.kkt_instances);
        read_opt(e, "mmse_trials", c.validate.mmse_trials);
        read_opt(e, "gradient_configs", c.validate.gradient_configs);
        read_opt(e, "jensen_pilot_dbm", c.validate.jensen_pilot_dbm);
    }
    c.validate_fields();
    return c;
}

ExperimentConfig load_experiment_config(const std::string &path)
{
    return experiment_config_from_json(read_json_file(path));
}

// -------------------------------------------------------------- commands

namespace
{
std::string in_dir(const std::string &dir, const std::string &file)
{
    fs::create_directories(dir);
    return (fs::path(dir) / file).string();
}

Scenario reference_scenario(const SystemConfig &sys)
{
    Rng topo = make_rng(sys.master_seed, streams::topology, 0);
    return generate_topology(sys, topo);
}
} // namespace

std::vector<NmseRow> cmd_nmse_sweep(const ExperimentConfig &cfg, const std::string &out_dir)
{
    const auto rows = run_nmse_sweep(cfg.nmse, cfg.system.master_seed);
    write_text_file(in_dir(out_dir, "nmse_sweep.csv"), nmse_csv(rows));
    return rows;
}

rl::TrainLog cmd_train(const ExperimentConfig &cfg, const std::string &out_dir, const std::string &resume)
{
    rl::Trainer trainer = resume.empty() ? rl::Trainer(cfg.system, cfg.train, cfg.env) : rl::Trainer::load(resume);
    fs::create_directories(out_dir);
    trainer.checkpoint_dir = out_dir;
    trainer.run(cfg.train.episodes);
    const std::string alg = rl::to_string(trainer.config().algorithm);
    write_text_file(in_dir(out_dir, "train_" + alg + ".csv"), trainer.log().csv());
    trainer.save(in_dir(out_dir, "checkpoint_" + alg + ".json"));
    return trainer.log();
}

std::vector<rl::EvalResult> cmd_compare(const ExperimentConfig &cfg, const std::string &out_dir)
{
    const Scenario scenario = reference_scenario(cfg.system);
    std::vector<rl::EvalResult> rows;
    for (const auto &scheme : cfg.compare.schemes)
    {
        rl::AllocationPolicy policy;
        if (scheme == "matd3" || scheme == "maddpg")
        {
            std::string path = (fs::path(out_dir) / ("checkpoint_" + scheme + ".json")).string();
            if (auto it = cfg.compare.checkpoints.find(scheme); it != cfg.compare.checkpoints.end())
                path = it->second;
            if (!fs::exists(path))
                throw MissingCheckpoint("compare: no checkpoint for '" + scheme + "' at " + path);
            policy = rl::actor_policy(rl::Trainer::load(path).ensemble());
        }
        else
        {
            policy = rl::baseline_policy(rl::baseline_from_string(scheme));
        }
        rows.push_back(rl::evaluate_policy(cfg.system, cfg.env, scenario, policy, cfg.compare.episodes,
                                           cfg.compare.t_max, cfg.compare.heldout_seed, scheme));
    }
    write_text_file(in_dir(out_dir, "compare.csv"), compare_csv(rows));
    return rows;
}

std::string compare_csv(const std::vector<rl::EvalResult> &rows)
{
    std::ostringstream os;
    os << "scheme,episodes,mean_reward,reward_stderr,mean_objective,objective_stderr,channel_digest\n";
    for (const auto &r : rows)
    {
        std::ostringstream hex;
        hex << std::hex << r.digest;
        os << r.scheme << "," << r.episodes << "," << csv_number(r.mean_reward) << "," << csv_number(r.reward_stderr)
           << "," << csv_number(r.mean_objective) << "," << csv_number(r.objective_stderr) << "," << hex.str()
           << "\n";
    }
    return os.str();
}

// ------------------------------------------------------------ validation

bool ValidationReport::passed() const
{
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult &s) { return s.passed; });
}

json ValidationReport::to_json() const
{
    json j;
    j["schema_version"] = kSchemaVersion;
    j["passed"] = passed();
    j["suites"] = json::array();
    for (const auto &s : suites)
        j["suites"].push_back({{"name", s.name}, {"passed", s.passed}, {"detail", s.detail}});
    return j;
}

namespace
{
SuiteResult suite_waterfill(const ExperimentConfig &cfg)
{
    Rng rng = make_rng(cfg.system.master_seed, streams::validate, 0);
    double worst_sum = 0.0, worst_level = 0.0, worst_inactive = 0.0;
    for (int i = 0; i < cfg.validate.kkt_instances; ++i)
    {
        RVec lam(4);
        for (auto &v : lam)
            v = uniform(rng, 0.05, 10.0);
        std::sort(lam.begin(), lam.end(), std::greater<>());
        const double snr = uniform(rng, 0.1, 20.0);
        const double budget = uniform(rng, 0.2, 8.0);
        const RVec x = waterfill(lam, snr, 1.0, budget, 4);
        worst_sum = std::max(worst_sum, std::abs(x.sum() - budget) / budget);
        double level = -1.0;
        for (Eigen::Index k = 0; k < 4; ++k)
            if (x(k) > 0.0)
            {
                const double l = 1.0 / lam(k) + snr * x(k);
                if (level < 0.0)
                    level = l;
                worst_level = std::max(worst_level, std::abs(l - level) / level);
            }
        for (Eigen::Index k = 0; k < 4; ++k)
            if (x(k) == 0.0)
                worst_inactive = std::max(worst_inactive, level - 1.0 / lam(k));
    }
    SuiteResult r{"waterfill_kkt", false, {}};
    r.detail = {{"budget_rel_err", worst_sum}, {"level_rel_spread", worst_level}, {"inactive_violation", worst_inactive}};
    r.passed = worst_sum <= 1e-9 && worst_level <= 1e-9 && worst_inactive <= 1e-9;
    return r;
}

SuiteResult suite_kron(const ExperimentConfig &cfg)
{
    Rng rng = make_rng(cfg.system.master_seed, streams::validate, 1);
    double worst_exact = 0.0, worst_residual = 0.0;
    for (int i = 0; i < 10; ++i)
    {
        const int n = 3 + i % 4, n_rf = 1 + i % 3;
        const CMat W = complex_normal_matrix(rng, n, n_rf, 1.0);
        const CMat U = complex_normal_matrix(rng, n, n_rf, 1.0);
        const CMat A = kron_coupling(W, U);
        const KronFactors kf = kron_factorize(A, n, n_rf);
        worst_exact = std::max(worst_exact, (kron_coupling(kf.W, kf.U) - A).norm() / A.norm());

        const CMat G = complex_normal_matrix(rng, n_rf * n_rf, n * n, 1.0);
        const KronFactors kg = kron_factorize(G, n, n_rf);
        const double tail = std::sqrt(std::max(0.0, kg.singular.squaredNorm() - kg.singular(0) * kg.singular(0)));
        worst_residual = std::max(worst_residual, std::abs(kg.residual - tail) / G.norm());
    }
    SuiteResult r{"kron_factorization", false, {}};
    r.detail = {{"exact_rel_err", worst_exact}, {"residual_vs_tail", worst_residual}};
    r.passed = worst_exact <= 1e-10 && worst_residual <= 1e-10;
    return r;
}

SuiteResult suite_mmse(const ExperimentConfig &cfg)
{
    Rng rng = make_rng(cfg.system.master_seed, streams::validate, 2);
    const int n = 6, n_rf = 3, L = 3;
    const double rho = 10.0, sigma2 = 1.0;
    const InterApAngles angles = sample_interap_channel(1.0, L, n, rng).angles;
    const CMat R = interap_covariance(angles, 1.0, n);
    const CouplingDesign design = optimal_coupling(R, rho, sigma2, n_rf, false);
    const InterApEstimator est = make_interap_estimator(R, design.A, rho, sigma2);
    const int trials = cfg.validate.mmse_trials;
    double sum = 0.0, sum2 = 0.0;
    for (int t = 0; t < trials; ++t)
    {
        const CMat H = sample_interap_given_angles(1.0, angles, n, rng);
        const CVec y = simulate_coupled_pilot(H, design.A, rho, sigma2, rng);
        const double e = (est.estimate(y) - H).squaredNorm();
        sum += e;
        sum2 += e * e;
    }
    const double mean = sum / trials;
    const double se = std::sqrt(std::max(0.0, sum2 / trials - mean * mean) / (trials - 1));
    SuiteResult r{"mmse_consistency", false, {}};
    r.detail = {{"empirical_mse", mean}, {"trace_C", est.trace_C}, {"stderr", se}, {"trials", trials}};
    r.passed = std::abs(mean - est.trace_C) <= 4.0 * se;
    return r;
}

SuiteResult suite_jensen(const ExperimentConfig &cfg, const FaultInjection &fault)
{
    SystemConfig sys = cfg.system;
    sys.pilot_user_dbm = cfg.validate.jensen_pilot_dbm;
    sys.pilot_ap_dbm = cfg.validate.jensen_pilot_dbm;
    Rng topo = make_rng(sys.master_seed, streams::validate, 3);
    const Scenario scenario = generate_topology(sys, topo);
    Rng ang = make_rng(sys.master_seed, streams::validate, 4);
    const AngleSet angles = draw_angles(sys, scenario, ang);
    const AllocationRule rule = [&sys](const BeamformerSet &bf) {
        Rng unused(0);
        return rl::baseline_allocation(rl::BaselineScheme::ul_max, sys, bf, unused);
    };
    PipelineOptions opts = cfg.env.pipeline;
    const OracleReport rep =
        mc_ergodic_rate(sys, scenario, angles, opts, rule, cfg.validate.mc_trials,
                        derive_seed(sys.master_seed, streams::validate, 5), fault);
    double worst = -1e300;
    json users = json::array();
    auto check = [&](const char *link, std::size_t u, double lb, double lb_se, double mc, double mc_se) {
        const double slack = lb - mc - 3.0 * std::hypot(lb_se, mc_se);
        worst = std::max(worst, slack);
        users.push_back({{"link", link}, {"user", u}, {"lower_bound", lb}, {"monte_carlo", mc}, {"slack", slack}});
    };
    for (std::size_t k = 0; k < rep.dl_mean.size(); ++k)
        check("dl", k, rep.lb_dl_mean[k], rep.lb_dl_stderr[k], rep.dl_mean[k], rep.dl_stderr[k]);
    for (std::size_t j = 0; j < rep.ul_mean.size(); ++j)
        check("ul", j, rep.lb_ul_mean[j], rep.lb_ul_stderr[j], rep.ul_mean[j], rep.ul_stderr[j]);
    SuiteResult r{"jensen", false, {}};
    r.detail = {{"trials", rep.trials}, {"worst_slack", worst}, {"users", users}};
    r.passed = worst <= 0.0;
    return r;
}

SuiteResult suite_zf(const ExperimentConfig &cfg)
{
    Rng rng = make_rng(cfg.system.master_seed, streams::validate, 6);
    const SystemConfig &sys = cfg.system;
    const Scenario scenario = generate_topology(sys, rng);
    const AngleSet angles = draw_angles(sys, scenario, rng);
    PipelineOptions opts = cfg.env.pipeline;
    opts.combiner = CombinerMode::joint;
    const StaticDesign design = design_static(sys, scenario, angles, opts);
    const ChannelSet ch = draw_channels(sys, scenario, angles, rng);
    const EstimateBundle est = estimate_all(design, ch, rng);
    const BeamformerSet bf = build_beamformers(design, est);
    const CMat Hs = stack_downlink(est.h_hat);
    const CMat Gs = stack_uplink(est.g_hat);
    const double dl_err = (Hs.adjoint() * bf.precoder.F - CMat::Identity(Hs.cols(), Hs.cols())).cwiseAbs().maxCoeff();
    const double ul_err = (bf.combiner.V * Gs - CMat::Identity(Gs.cols(), Gs.cols())).cwiseAbs().maxCoeff();
    SuiteResult r{"zf_exactness", false, {}};
    r.detail = {{"downlink_max_err", dl_err}, {"uplink_max_err", ul_err}};
    r.passed = dl_err <= 1e-9 && ul_err <= 1e-9;
    return r;
}

double fd_rel_err(double analytic, double numeric)
{
    return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-6});
}

SuiteResult suite_gradient(const ExperimentConfig &cfg)
{
    Rng rng = make_rng(cfg.system.master_seed, streams::validate, 7);
    const double h = 1e-6;
    double worst_critic = 0.0, worst_actor = 0.0;
    for (int c = 0; c < cfg.validate.gradient_configs; ++c)
    {
        const int n_ul = 1 + c % 2, n_dl = 1 + (c / 2) % 2, ul_dim = 2 + c % 3, dl_dim = 3 + c % 2;
        const int n_agents = n_ul + n_dl, state_dim = ul_dim + dl_dim;
        std::vector<int> off, dim;
        for (int i = 0; i < n_agents; ++i)
        {
            off.push_back(i < n_ul ? 0 : ul_dim);
            dim.push_back(i < n_ul ? ul_dim : dl_dim);
        }
        rl::TrainConfig tc;
        tc.hidden = 5 + c % 4;
        rl::AgentEnsemble ens = rl::make_ensemble(off, dim, state_dim, tc, rng);
        const int B = 4;
        rl::Batch batch;
        batch.s = RMat::NullaryExpr(state_dim, B, [&] { return normal(rng); });
        batch.s2 = RMat::NullaryExpr(state_dim, B, [&] { return normal(rng); });
        batch.a = RMat::NullaryExpr(n_agents, B, [&] { return uniform(rng, -1.0, 1.0); });
        batch.r = RMat::NullaryExpr(n_agents, B, [&] { return normal(rng); });
        const RVec y = RVec::NullaryExpr(B, [&] { return normal(rng); });
        const int i = c % n_agents;

        rl::Mlp critic = ens.agents[static_cast<std::size_t>(i)].critic1;
        const RMat X = rl::critic_input(batch.s, batch.a);
        RVec g = RVec::Zero(critic.param_count());
        rl::critic_loss(critic, X, y, g);
        for (Eigen::Index p = 0; p < critic.param_count(); ++p)
        {
            RVec tmp;
            const double v = critic.params()(p);
            critic.params()(p) = v + h;
            const double lp = rl::critic_loss(critic, X, y, tmp = RVec::Zero(critic.param_count()));
            critic.params()(p) = v - h;
            const double lm = rl::critic_loss(critic, X, y, tmp = RVec::Zero(critic.param_count()));
            critic.params()(p) = v;
            worst_critic = std::max(worst_critic, fd_rel_err(g(p), (lp - lm) / (2.0 * h)));
        }

        RVec& theta = ens.agents[static_cast<std::size_t>(i)].actor.params();
        RVec ga = RVec::Zero(theta.size());
        rl::actor_loss(batch, i, ens, ga);
        for (Eigen::Index p = 0; p < theta.size(); ++p)
        {
            RVec tmp = RVec::Zero(theta.size());
            const double v = theta(p);
            theta(p) = v + h;
            const double lp = rl::actor_loss(batch, i, ens, tmp);
            theta(p) = v - h;
            const double lm = rl::actor_loss(batch, i, ens, tmp);
            theta(p) = v;
            worst_actor = std::max(worst_actor, fd_rel_err(ga(p), (lp - lm) / (2.0 * h)));
        }
    }
    SuiteResult r{"gradient_check", false, {}};
    r.detail = {{"critic_max_rel_err", worst_critic}, {"actor_max_rel_err", worst_actor}};
    r.passed = worst_critic <= 1e-4 && worst_actor <= 1e-4;
    return r;
}

SuiteResult suite_td3(const ExperimentConfig &cfg)
{
    const double y = rl::td3_target(1.0, 0.95, 2.0, 3.0);
    const bool target_ok = std::abs(y - 2.9) <= 1e-15;

    Rng rng = make_rng(cfg.system.master_seed, streams::validate, 8);
    const rl::Mlp eval({3, 4, 2}, rl::Activation::tanh, rng);
    rl::Mlp target({3, 4, 2}, rl::Activation::tanh, rng);
    const double eps = 0.1;
    double worst = 0.0;
    double prev = (target.params() - eval.params()).norm();
    for (int k = 0; k < 50; ++k)
    {
        rl::soft_update(target, eval, eps);
        const double cur = (target.params() - eval.params()).norm();
        worst = std::max(worst, std::abs(cur / prev - (1.0 - eps)));
        prev = cur;
    }

    SystemConfig small = cfg.system;
    small.n_tap = small.n_rap = 3;
    small.n_ul_users = small.n_dl_users = 2;
    small.n_ant = 4;
    small.n_rf = 2;
    rl::TrainConfig tc;
    tc.episodes = 1;
    tc.t_max = 9;
    tc.batch_size = 2;
    tc.hidden = 8;
    tc.policy_delay = 2;
    rl::Trainer trainer(small, tc, cfg.env);
    trainer.run(1);
    const long long critic = trainer.critic_updates(), actor = trainer.actor_updates();
    const bool delay_ok = critic == 8 && actor == critic / 2 && trainer.replay().size() == 9;

    SuiteResult r{"td3_mechanics", false, {}};
    r.detail = {{"twin_min_target", y},
                {"soft_update_contraction_err", worst},
                {"critic_updates", critic},
                {"actor_updates", actor}};
    r.passed = target_ok && worst <= 1e-12 && delay_ok;
    return r;
}
} // namespace

ValidationReport run_validation(const ExperimentConfig &cfg, const FaultInjection &fault)
{
    ValidationReport rep;
    rep.suites.push_back(suite_waterfill(cfg));
    rep.suites.push_back(suite_kron(cfg));
    rep.suites.push_back(suite_mmse(cfg));
    rep.suites.push_back(suite_jensen(cfg, fault));
    rep.suites.push_back(suite_zf(cfg));
    rep.suites.push_back(suite_gradient(cfg));
    rep.suites.push_back(suite_td3(cfg));
    return rep;
}

ValidationReport cmd_validate(const ExperimentConfig &cfg, const std::string &out_dir, const FaultInjection &fault)
{
    ValidationReport rep = run_validation(cfg, fault);
    write_json_file(in_dir(out_dir, "validate.json"), rep.to_json());
    return rep;
}

} // namespace nafd
