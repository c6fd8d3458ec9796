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

#include <cstddef>
#include <string>
#include <vector>

#include "nafd/random.hpp"
#include "nafd/types.hpp"

namespace nafd::rl
{

/// Columns are samples.
struct Batch
{
    RMat s;
    RMat s2;
    RMat a;
    RMat r;
};

/// Fixed-capacity ring of joint transitions (s, s', a, r).
class ReplayBuffer
{
public:
    ReplayBuffer() = default;
    ReplayBuffer(std::size_t capacity, int state_dim, int action_dim, int n_agents);

    void push(const RVec &s, const RVec &s2, const RVec &a, const RVec &r);

    std::size_t size() const { return count_; }
    std::size_t capacity() const { return capacity_; }
    int state_dim() const { return state_dim_; }
    int action_dim() const { return action_dim_; }
    int n_agents() const { return n_agents_; }

    /// Distinct uniformly chosen slots.
    std::vector<std::size_t> sample_indices(std::size_t batch, Rng &rng) const;
    Batch gather(const std::vector<std::size_t> &idx) const;
    Batch sample(std::size_t batch, Rng &rng) const;

    void write_binary(const std::string &path) const;
    void read_binary(const std::string &path);

    bool operator==(const ReplayBuffer &) const = default;

private:
    std::size_t capacity_ = 0;
    int state_dim_ = 0;
    int action_dim_ = 0;
    int n_agents_ = 0;
    std::size_t head_ = 0;
    std::size_t count_ = 0;
    std::vector<double> s_, s2_, a_, r_;
};

} // namespace nafd::rl
