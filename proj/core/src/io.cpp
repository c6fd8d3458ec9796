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

#include "nafd/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nafd
{

namespace
{
void reject_unknown(const json &j, const std::set<std::string> &known, const char *what)
{
    if (!j.is_object())
        throw std::invalid_argument(std::string(what) + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw std::invalid_argument(std::string(what) + ": unknown key '" + it.key() + "'");
}

template <class T>
void read_opt(const json &j, const char *key, T &out)
{
    if (j.contains(key))
        out = j.at(key).get<T>();
}

json grid_db(const Grid<double> &g)
{
    json rows = json::array();
    for (std::size_t r = 0; r < g.rows(); ++r)
    {
        json row = json::array();
        for (std::size_t c = 0; c < g.cols(); ++c)
            row.push_back(10.0 * std::log10(g(r, c)));
        rows.push_back(row);
    }
    return rows;
}

Grid<double> grid_from_db(const json &rows)
{
    const std::size_t R = rows.size();
    const std::size_t C = R ? rows.at(0).size() : 0;
    Grid<double> g(R, C);
    for (std::size_t r = 0; r < R; ++r)
    {
        if (rows.at(r).size() != C)
            throw std::invalid_argument("scenario: ragged gain table");
        for (std::size_t c = 0; c < C; ++c)
            g(r, c) = std::pow(10.0, rows.at(r).at(c).get<double>() / 10.0);
    }
    return g;
}

json points(const std::vector<Point> &p)
{
    json a = json::array();
    for (const auto &q : p)
        a.push_back({q.x, q.y});
    return a;
}

std::vector<Point> points_from(const json &a)
{
    std::vector<Point> p;
    for (const auto &q : a)
        p.push_back({q.at(0).get<double>(), q.at(1).get<double>()});
    return p;
}

json vec_json(const RVec &v)
{
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

RVec vec_from(const json &a)
{
    const auto v = a.get<std::vector<double>>();
    return Eigen::Map<const RVec>(v.data(), static_cast<Eigen::Index>(v.size()));
}
} // namespace

json to_json(const SystemConfig &c)
{
    return {{"n_tap", c.n_tap},
            {"n_rap", c.n_rap},
            {"n_ul_users", c.n_ul_users},
            {"n_dl_users", c.n_dl_users},
            {"n_ant", c.n_ant},
            {"n_rf", c.n_rf},
            {"n_paths", c.n_paths},
            {"radius_m", c.radius_m},
            {"protect_m", c.protect_m},
            {"carrier_hz", c.carrier_hz},
            {"noise_dbm", c.noise_dbm},
            {"p_d_dbm", c.p_d_dbm},
            {"p_u_dbm", c.p_u_dbm},
            {"pathloss_exp", c.pathloss_exp},
            {"shadow_std_db", c.shadow_std_db},
            {"omega_d", c.omega_d},
            {"omega_u", c.omega_u},
            {"pilot_ap_dbm", c.pilot_ap_dbm},
            {"pilot_user_dbm", c.pilot_user_dbm},
            {"master_seed", c.master_seed}};
}

SystemConfig system_config_from_json(const json &j, SystemConfig c)
{
    reject_unknown(j,
                   {"n_tap", "n_rap", "n_ul_users", "n_dl_users", "n_ant", "n_rf", "n_paths", "radius_m", "protect_m",
                    "carrier_hz", "noise_dbm", "p_d_dbm", "p_u_dbm", "pathloss_exp", "shadow_std_db", "omega_d",
                    "omega_u", "pilot_ap_dbm", "pilot_user_dbm", "master_seed"},
                   "system");
    read_opt(j, "n_tap", c.n_tap);
    read_opt(j, "n_rap", c.n_rap);
    read_opt(j, "n_ul_users", c.n_ul_users);
    read_opt(j, "n_dl_users", c.n_dl_users);
    read_opt(j, "n_ant", c.n_ant);
    read_opt(j, "n_rf", c.n_rf);
    read_opt(j, "n_paths", c.n_paths);
    read_opt(j, "radius_m", c.radius_m);
    read_opt(j, "protect_m", c.protect_m);
    read_opt(j, "carrier_hz", c.carrier_hz);
    read_opt(j, "noise_dbm", c.noise_dbm);
    read_opt(j, "p_d_dbm", c.p_d_dbm);
    read_opt(j, "p_u_dbm", c.p_u_dbm);
    read_opt(j, "pathloss_exp", c.pathloss_exp);
    read_opt(j, "shadow_std_db", c.shadow_std_db);
    read_opt(j, "omega_d", c.omega_d);
    read_opt(j, "omega_u", c.omega_u);
    read_opt(j, "pilot_ap_dbm", c.pilot_ap_dbm);
    read_opt(j, "pilot_user_dbm", c.pilot_user_dbm);
    read_opt(j, "master_seed", c.master_seed);
    c.validate();
    return c;
}

json to_json(const rl::TrainConfig &c)
{
    return {{"algorithm", rl::to_string(c.algorithm)},
            {"episodes", c.episodes},
            {"t_max", c.t_max},
            {"batch_size", c.batch_size},
            {"lr", c.lr},
            {"gamma", c.gamma},
            {"policy_delay", c.policy_delay},
            {"target_noise", c.target_noise},
            {"target_noise_clip", c.target_noise_clip},
            {"exploration_noise", c.exploration_noise},
            {"tau", c.tau},
            {"replay_capacity", c.replay_capacity},
            {"hidden", c.hidden},
            {"dynamic", c.dynamic},
            {"dynamic_period", c.dynamic_period},
            {"checkpoint_every", c.checkpoint_every}};
}

rl::TrainConfig train_config_from_json(const json &j, rl::TrainConfig c)
{
    reject_unknown(j,
                   {"algorithm", "episodes", "t_max", "batch_size", "lr", "gamma", "policy_delay", "target_noise",
                    "target_noise_clip", "exploration_noise", "tau", "replay_capacity", "hidden", "dynamic",
                    "dynamic_period", "checkpoint_every"},
                   "train");
    if (j.contains("algorithm"))
        c.algorithm = rl::algorithm_from_string(j.at("algorithm").get<std::string>());
    read_opt(j, "episodes", c.episodes);
    read_opt(j, "t_max", c.t_max);
    read_opt(j, "batch_size", c.batch_size);
    read_opt(j, "lr", c.lr);
    read_opt(j, "gamma", c.gamma);
    read_opt(j, "policy_delay", c.policy_delay);
    read_opt(j, "target_noise", c.target_noise);
    read_opt(j, "target_noise_clip", c.target_noise_clip);
    read_opt(j, "exploration_noise", c.exploration_noise);
    read_opt(j, "tau", c.tau);
    read_opt(j, "replay_capacity", c.replay_capacity);
    read_opt(j, "hidden", c.hidden);
    read_opt(j, "dynamic", c.dynamic);
    read_opt(j, "dynamic_period", c.dynamic_period);
    read_opt(j, "checkpoint_every", c.checkpoint_every);
    c.validate();
    return c;
}

json to_json(const PipelineOptions &o)
{
    return {{"coupling", o.coupling == CouplingRealization::designed ? "designed" : "kronecker"},
            {"combiner", o.combiner == CombinerMode::joint ? "joint" : "per_rap"}};
}

PipelineOptions pipeline_options_from_json(const json &j, PipelineOptions o)
{
    reject_unknown(j, {"coupling", "combiner"}, "pipeline");
    if (j.contains("coupling"))
    {
        const auto s = j.at("coupling").get<std::string>();
        if (s == "designed")
            o.coupling = CouplingRealization::designed;
        else if (s == "kronecker")
            o.coupling = CouplingRealization::kronecker;
        else
            throw std::invalid_argument("pipeline: unknown coupling '" + s + "'");
    }
    if (j.contains("combiner"))
    {
        const auto s = j.at("combiner").get<std::string>();
        if (s == "joint")
            o.combiner = CombinerMode::joint;
        else if (s == "per_rap")
            o.combiner = CombinerMode::per_rap;
        else
            throw std::invalid_argument("pipeline: unknown combiner '" + s + "'");
    }
    return o;
}

json to_json(const Scenario &s)
{
    return {{"schema_version", kSchemaVersion},
            {"tap", points(s.tap)},
            {"rap", points(s.rap)},
            {"ul_users", points(s.ul_users)},
            {"dl_users", points(s.dl_users)},
            {"beta_dl_db", grid_db(s.beta_dl)},
            {"beta_ul_db", grid_db(s.beta_ul)},
            {"beta_ap_db", grid_db(s.beta_ap)},
            {"beta_iui_db", grid_db(s.beta_iui)}};
}

Scenario scenario_from_json(const json &j)
{
    Scenario s;
    s.tap = points_from(j.at("tap"));
    s.rap = points_from(j.at("rap"));
    s.ul_users = points_from(j.at("ul_users"));
    s.dl_users = points_from(j.at("dl_users"));
    s.beta_dl = grid_from_db(j.at("beta_dl_db"));
    s.beta_ul = grid_from_db(j.at("beta_ul_db"));
    s.beta_ap = grid_from_db(j.at("beta_ap_db"));
    s.beta_iui = grid_from_db(j.at("beta_iui_db"));
    return s;
}

json to_json(const RateReport &r)
{
    json dl = json::array(), ul = json::array();
    for (const auto &t : r.dl)
        dl.push_back({{"rate", t.rate}, {"sinr", t.sinr}, {"dee", t.dee}, {"iui", t.iui}, {"noise", t.noise}});
    for (const auto &t : r.ul)
        ul.push_back({{"rate", t.rate},
                      {"sinr", t.sinr},
                      {"tee", t.tee},
                      {"tee_user", t.tee_user},
                      {"tee_interap", t.tee_interap},
                      {"noise", t.noise}});
    return {{"schema_version", kSchemaVersion}, {"downlink", dl}, {"uplink", ul}, {"objective", r.objective}};
}

json to_json(const rl::Mlp &m)
{
    return {{"sizes", m.sizes()},
            {"output", m.output_activation() == rl::Activation::tanh ? "tanh" : "linear"},
            {"params", vec_json(m.params())}};
}

rl::Mlp mlp_from_json(const json &j)
{
    const auto act = j.at("output").get<std::string>() == "tanh" ? rl::Activation::tanh : rl::Activation::linear;
    rl::Mlp m(j.at("sizes").get<std::vector<int>>(), act);
    const RVec p = vec_from(j.at("params"));
    if (p.size() != m.param_count())
        throw std::invalid_argument("mlp: parameter count does not match layer sizes");
    m.params() = p;
    return m;
}

json to_json(const rl::Adam &a)
{
    return {{"lr", a.lr}, {"beta1", a.beta1}, {"beta2", a.beta2}, {"eps", a.eps},
            {"t", a.t},   {"m", vec_json(a.m)}, {"v", vec_json(a.v)}};
}

rl::Adam adam_from_json(const json &j)
{
    rl::Adam a;
    a.lr = j.at("lr").get<double>();
    a.beta1 = j.at("beta1").get<double>();
    a.beta2 = j.at("beta2").get<double>();
    a.eps = j.at("eps").get<double>();
    a.t = j.at("t").get<long long>();
    a.m = vec_from(j.at("m"));
    a.v = vec_from(j.at("v"));
    return a;
}

json to_json(const rl::AgentEnsemble &e)
{
    json agents = json::array();
    for (const auto &a : e.agents)
        agents.push_back({{"obs_offset", a.obs_offset},
                          {"obs_dim", a.obs_dim},
                          {"actor", to_json(a.actor)},
                          {"actor_target", to_json(a.actor_target)},
                          {"critic1", to_json(a.critic1)},
                          {"critic2", to_json(a.critic2)},
                          {"critic1_target", to_json(a.critic1_target)},
                          {"critic2_target", to_json(a.critic2_target)},
                          {"actor_opt", to_json(a.actor_opt)},
                          {"critic1_opt", to_json(a.critic1_opt)},
                          {"critic2_opt", to_json(a.critic2_opt)}});
    return {{"schema_version", kSchemaVersion},
            {"algorithm", rl::to_string(e.algorithm)},
            {"state_dim", e.state_dim},
            {"agents", agents}};
}

rl::AgentEnsemble ensemble_from_json(const json &j)
{
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw std::invalid_argument("ensemble: unsupported schema version");
    rl::AgentEnsemble e;
    e.algorithm = rl::algorithm_from_string(j.at("algorithm").get<std::string>());
    e.state_dim = j.at("state_dim").get<int>();
    for (const auto &a : j.at("agents"))
    {
        rl::Agent g;
        g.obs_offset = a.at("obs_offset").get<int>();
        g.obs_dim = a.at("obs_dim").get<int>();
        g.actor = mlp_from_json(a.at("actor"));
        g.actor_target = mlp_from_json(a.at("actor_target"));
        g.critic1 = mlp_from_json(a.at("critic1"));
        g.critic2 = mlp_from_json(a.at("critic2"));
        g.critic1_target = mlp_from_json(a.at("critic1_target"));
        g.critic2_target = mlp_from_json(a.at("critic2_target"));
        g.actor_opt = adam_from_json(a.at("actor_opt"));
        g.critic1_opt = adam_from_json(a.at("critic1_opt"));
        g.critic2_opt = adam_from_json(a.at("critic2_opt"));
        e.agents.push_back(std::move(g));
    }
    return e;
}

std::string read_text_file(const std::string &path)
{
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write_text_file(const std::string &path, const std::string &text)
{
    std::ofstream os(path, std::ios::trunc);
    if (!os)
        throw std::runtime_error("cannot write " + path);
    os << text;
    if (!os)
        throw std::runtime_error("write failed for " + path);
}

json read_json_file(const std::string &path)
{
    return json::parse(read_text_file(path));
}

void write_json_file(const std::string &path, const json &j)
{
    write_text_file(path, j.dump(2) + "\n");
}

std::string csv_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace nafd
