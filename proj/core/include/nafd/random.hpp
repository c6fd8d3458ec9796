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
#include <random>
#include <string>

#include "nafd/types.hpp"

namespace nafd
{

using Rng = std::mt19937_64;

// Counter-based seed split: the seed of (stream, index) does not depend on
// how many other indices were drawn, so trial counts can change without
// perturbing earlier trials.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0);

inline Rng make_rng(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0)
{
    return Rng(derive_seed(master, stream, index));
}

// Stream identifiers for derive_seed. Values are part of the determinism
// contract; do not renumber.
namespace streams
{
inline constexpr std::uint64_t topology = 1;
inline constexpr std::uint64_t channel = 2;
inline constexpr std::uint64_t pilot = 3;
inline constexpr std::uint64_t nmse_trial = 4;
inline constexpr std::uint64_t mc_trial = 5;
inline constexpr std::uint64_t episode = 6;
inline constexpr std::uint64_t network_init = 7;
inline constexpr std::uint64_t exploration = 8;
inline constexpr std::uint64_t heldout = 9;
inline constexpr std::uint64_t baseline = 10;
inline constexpr std::uint64_t validate = 11;
} // namespace streams

double normal(Rng &rng, double mean = 0.0, double stddev = 1.0);
double uniform(Rng &rng, double lo, double hi);

// CN(0, variance): independent real/imag parts with variance/2 each.
cd complex_normal(Rng &rng, double variance);
CVec complex_normal_vector(Rng &rng, Eigen::Index n, double variance);
CMat complex_normal_matrix(Rng &rng, Eigen::Index rows, Eigen::Index cols, double variance);

std::string rng_state(const Rng &rng);
void set_rng_state(Rng &rng, const std::string &state);

} // namespace nafd
