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

#include <nlohmann/json.hpp>

#include "nafd/rates.hpp"
#include "nafd/rl/agents.hpp"
#include "nafd/rl/environment.hpp"
#include "nafd/scenario.hpp"

namespace nafd
{

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json to_json(const SystemConfig &cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
SystemConfig system_config_from_json(const json &j, SystemConfig base = {});

json to_json(const rl::TrainConfig &cfg);
rl::TrainConfig train_config_from_json(const json &j, rl::TrainConfig base = {});

json to_json(const PipelineOptions &o);
PipelineOptions pipeline_options_from_json(const json &j, PipelineOptions base = {});

/// Positions in meters, large-scale gains in dB.
json to_json(const Scenario &s);
Scenario scenario_from_json(const json &j);

json to_json(const RateReport &r);

json to_json(const rl::Mlp &m);
rl::Mlp mlp_from_json(const json &j);
json to_json(const rl::Adam &a);
rl::Adam adam_from_json(const json &j);
json to_json(const rl::AgentEnsemble &e);
rl::AgentEnsemble ensemble_from_json(const json &j);

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);
json read_json_file(const std::string &path);
void write_json_file(const std::string &path, const json &j);

/// Fixed-format number for CSV cells, stable across runs.
std::string csv_number(double v);

} // namespace nafd
