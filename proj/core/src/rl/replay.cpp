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

#include "nafd/rl/replay.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace nafd::rl
{

namespace
{
constexpr std::uint64_t kReplayMagic = 0x4e41464452504c31ULL;

void put(std::vector<double> &store, std::size_t slot, const RVec &v, int dim)
{
    const auto off = slot * static_cast<std::size_t>(dim);
    if (store.size() < off + static_cast<std::size_t>(dim))
        store.resize(off + static_cast<std::size_t>(dim));
    std::copy(v.data(), v.data() + dim, store.begin() + static_cast<std::ptrdiff_t>(off));
}

RMat take(const std::vector<double> &store, const std::vector<std::size_t> &idx, int dim)
{
    RMat out(dim, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c)
        out.col(static_cast<Eigen::Index>(c)) =
            Eigen::Map<const RVec>(store.data() + idx[c] * static_cast<std::size_t>(dim), dim);
    return out;
}

template <class T>
void write_pod(std::ofstream &os, const T &v)
{
    os.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <class T>
void read_pod(std::ifstream &is, T &v)
{
    is.read(reinterpret_cast<char *>(&v), sizeof(T));
}

void write_vec(std::ofstream &os, const std::vector<double> &v)
{
    write_pod(os, static_cast<std::uint64_t>(v.size()));
    os.write(reinterpret_cast<const char *>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
}

void read_vec(std::ifstream &is, std::vector<double> &v)
{
    std::uint64_t n = 0;
    read_pod(is, n);
    v.resize(n);
    is.read(reinterpret_cast<char *>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
}
} // namespace

ReplayBuffer::ReplayBuffer(std::size_t capacity, int state_dim, int action_dim, int n_agents)
    : capacity_(capacity), state_dim_(state_dim), action_dim_(action_dim), n_agents_(n_agents)
{
    if (capacity == 0 || state_dim < 1 || action_dim < 1 || n_agents < 1)
        throw std::invalid_argument("ReplayBuffer: invalid dimensions");
}

void ReplayBuffer::push(const RVec &s, const RVec &s2, const RVec &a, const RVec &r)
{
    if (s.size() != state_dim_ || s2.size() != state_dim_ || a.size() != action_dim_ || r.size() != n_agents_)
        throw std::invalid_argument("ReplayBuffer::push: dimension mismatch");
    put(s_, head_, s, state_dim_);
    put(s2_, head_, s2, state_dim_);
    put(a_, head_, a, action_dim_);
    put(r_, head_, r, n_agents_);
    head_ = (head_ + 1) % capacity_;
    count_ = std::min(count_ + 1, capacity_);
}

std::vector<std::size_t> ReplayBuffer::sample_indices(std::size_t batch, Rng &rng) const
{
    if (batch > count_)
        throw std::invalid_argument("ReplayBuffer::sample: batch larger than buffer");
    // Floyd's algorithm: a uniformly random subset of size `batch`.
    std::vector<std::size_t> out;
    out.reserve(batch);
    std::unordered_set<std::size_t> seen;
    for (std::size_t j = count_ - batch; j < count_; ++j)
    {
        std::uniform_int_distribution<std::size_t> dist(0, j);
        const std::size_t t = dist(rng);
        const std::size_t pick = seen.count(t) ? j : t;
        seen.insert(pick);
        out.push_back(pick);
    }
    return out;
}

Batch ReplayBuffer::gather(const std::vector<std::size_t> &idx) const
{
    for (auto i : idx)
        if (i >= count_)
            throw std::out_of_range("ReplayBuffer::gather: index out of range");
    return {take(s_, idx, state_dim_), take(s2_, idx, state_dim_), take(a_, idx, action_dim_),
            take(r_, idx, n_agents_)};
}

Batch ReplayBuffer::sample(std::size_t batch, Rng &rng) const
{
    return gather(sample_indices(batch, rng));
}

void ReplayBuffer::write_binary(const std::string &path) const
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw std::runtime_error("ReplayBuffer: cannot write " + path);
    write_pod(os, kReplayMagic);
    write_pod(os, static_cast<std::uint64_t>(capacity_));
    write_pod(os, static_cast<std::int64_t>(state_dim_));
    write_pod(os, static_cast<std::int64_t>(action_dim_));
    write_pod(os, static_cast<std::int64_t>(n_agents_));
    write_pod(os, static_cast<std::uint64_t>(head_));
    write_pod(os, static_cast<std::uint64_t>(count_));
    write_vec(os, s_);
    write_vec(os, s2_);
    write_vec(os, a_);
    write_vec(os, r_);
    if (!os)
        throw std::runtime_error("ReplayBuffer: write failed for " + path);
}

void ReplayBuffer::read_binary(const std::string &path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("ReplayBuffer: cannot read " + path);
    std::uint64_t magic = 0, cap = 0, head = 0, count = 0;
    std::int64_t sd = 0, ad = 0, na = 0;
    read_pod(is, magic);
    if (magic != kReplayMagic)
        throw std::runtime_error("ReplayBuffer: " + path + " is not a replay file");
    read_pod(is, cap);
    read_pod(is, sd);
    read_pod(is, ad);
    read_pod(is, na);
    read_pod(is, head);
    read_pod(is, count);
    ReplayBuffer b;
    b.capacity_ = cap;
    b.state_dim_ = static_cast<int>(sd);
    b.action_dim_ = static_cast<int>(ad);
    b.n_agents_ = static_cast<int>(na);
    b.head_ = head;
    b.count_ = count;
    read_vec(is, b.s_);
    read_vec(is, b.s2_);
    read_vec(is, b.a_);
    read_vec(is, b.r_);
    if (!is)
        throw std::runtime_error("ReplayBuffer: truncated file " + path);
    *this = std::move(b);
}

} // namespace nafd::rl
