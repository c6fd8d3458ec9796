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

#include "nafd/rl/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace nafd::rl
{

Mlp::Mlp(std::vector<int> sizes, Activation output) : sizes_(std::move(sizes)), output_(output)
{
    layout();
}

Mlp::Mlp(std::vector<int> sizes, Activation output, Rng &rng) : Mlp(std::move(sizes), output)
{
    for (int l = 0; l < layer_count(); ++l)
    {
        const double bound = 1.0 / std::sqrt(static_cast<double>(sizes_[static_cast<std::size_t>(l)]));
        auto W = weight(l);
        for (Eigen::Index c = 0; c < W.cols(); ++c)
            for (Eigen::Index r = 0; r < W.rows(); ++r)
                W(r, c) = uniform(rng, -bound, bound);
        auto b = bias(l);
        for (Eigen::Index i = 0; i < b.size(); ++i)
            b(i) = uniform(rng, -bound, bound);
    }
}

void Mlp::layout()
{
    if (sizes_.size() < 2)
        throw std::invalid_argument("Mlp: need at least input and output sizes");
    for (int s : sizes_)
        if (s < 1)
            throw std::invalid_argument("Mlp: layer sizes must be positive");
    Eigen::Index off = 0;
    w_off_.clear();
    b_off_.clear();
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l)
    {
        w_off_.push_back(off);
        off += static_cast<Eigen::Index>(sizes_[l + 1]) * sizes_[l];
        b_off_.push_back(off);
        off += sizes_[l + 1];
    }
    params_ = RVec::Zero(off);
}

Eigen::Map<RMat> Mlp::weight(int l)
{
    const auto i = static_cast<std::size_t>(l);
    return {params_.data() + w_off_.at(i), sizes_[i + 1], sizes_[i]};
}

Eigen::Map<const RMat> Mlp::weight(int l) const
{
    const auto i = static_cast<std::size_t>(l);
    return {params_.data() + w_off_.at(i), sizes_[i + 1], sizes_[i]};
}

Eigen::Map<RVec> Mlp::bias(int l)
{
    const auto i = static_cast<std::size_t>(l);
    return {params_.data() + b_off_.at(i), sizes_[i + 1]};
}

Eigen::Map<const RVec> Mlp::bias(int l) const
{
    const auto i = static_cast<std::size_t>(l);
    return {params_.data() + b_off_.at(i), sizes_[i + 1]};
}

RMat Mlp::forward(const RMat &X) const
{
    Tape tape;
    return forward(X, tape);
}

RMat Mlp::forward(const RMat &X, Tape &tape) const
{
    if (X.rows() != input_dim())
        throw std::invalid_argument("Mlp::forward: input dimension mismatch");
    tape.a.resize(static_cast<std::size_t>(layer_count()) + 1);
    tape.a[0] = X;
    for (int l = 0; l < layer_count(); ++l)
    {
        RMat Z = weight(l) * tape.a[static_cast<std::size_t>(l)];
        Z.colwise() += bias(l);
        const bool last = l + 1 == layer_count();
        if (!last || output_ == Activation::tanh)
            Z = Z.array().tanh().matrix();
        tape.a[static_cast<std::size_t>(l) + 1] = std::move(Z);
    }
    return tape.a.back();
}

RMat Mlp::backward(const Tape &tape, const RMat &dY, RVec &grad) const
{
    if (grad.size() != params_.size())
        throw std::invalid_argument("Mlp::backward: gradient size mismatch");
    if (tape.a.size() != static_cast<std::size_t>(layer_count()) + 1 || dY.rows() != output_dim() ||
        dY.cols() != tape.a.back().cols())
        throw std::invalid_argument("Mlp::backward: tape does not match upstream gradient");
    RMat delta = dY;
    for (int l = layer_count() - 1; l >= 0; --l)
    {
        const auto i = static_cast<std::size_t>(l);
        const RMat &out = tape.a[i + 1];
        const bool last = l + 1 == layer_count();
        if (!last || output_ == Activation::tanh)
            delta.array() *= 1.0 - out.array().square();
        Eigen::Map<RMat> gW(grad.data() + w_off_[i], sizes_[i + 1], sizes_[i]);
        Eigen::Map<RVec> gb(grad.data() + b_off_[i], sizes_[i + 1]);
        gW.noalias() += delta * tape.a[i].transpose();
        gb += delta.rowwise().sum();
        delta = weight(l).transpose() * delta;
    }
    return delta;
}

} // namespace nafd::rl
