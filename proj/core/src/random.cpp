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

#include "nafd/random.hpp"

#include <cmath>
#include <sstream>

namespace nafd
{

namespace
{
std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index)
{
    return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
}

// Distribution objects are created per call: generator state alone
// determines every subsequent draw.
double normal(Rng &rng, double mean, double stddev)
{
    std::normal_distribution<double> dist(mean, stddev);
    return dist(rng);
}

double uniform(Rng &rng, double lo, double hi)
{
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(rng);
}

cd complex_normal(Rng &rng, double variance)
{
    if (variance <= 0.0)
        return {0.0, 0.0};
    const double s = std::sqrt(variance / 2.0);
    const double re = normal(rng, 0.0, s);
    const double im = normal(rng, 0.0, s);
    return {re, im};
}

CVec complex_normal_vector(Rng &rng, Eigen::Index n, double variance)
{
    CVec v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = complex_normal(rng, variance);
    return v;
}

CMat complex_normal_matrix(Rng &rng, Eigen::Index rows, Eigen::Index cols, double variance)
{
    CMat m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            m(r, c) = complex_normal(rng, variance);
    return m;
}

std::string rng_state(const Rng &rng)
{
    std::ostringstream os;
    os << rng;
    return os.str();
}

void set_rng_state(Rng &rng, const std::string &state)
{
    std::istringstream is(state);
    is >> rng;
    if (is.fail())
        throw std::invalid_argument("set_rng_state: malformed generator state");
}

} // namespace nafd
