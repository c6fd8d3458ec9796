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

#include <vector>

#include "nafd/random.hpp"
#include "nafd/types.hpp"

namespace nafd::rl
{

enum class Activation
{
    tanh,
    linear
};

/// Fully connected network with tanh hidden layers. Samples are columns.
/// All parameters live in one flat vector; layer l has an out x in weight
/// block (column-major) followed by its bias.
class Mlp
{
public:
    /// Intermediate activations of one forward pass: a[0] is the input,
    /// a[l + 1] the output of layer l.
    struct Tape
    {
        std::vector<RMat> a;
    };

    Mlp() = default;
    Mlp(std::vector<int> sizes, Activation output);
    Mlp(std::vector<int> sizes, Activation output, Rng &rng);

    int input_dim() const { return sizes_.front(); }
    int output_dim() const { return sizes_.back(); }
    int layer_count() const { return static_cast<int>(sizes_.size()) - 1; }
    const std::vector<int> &sizes() const { return sizes_; }
    Activation output_activation() const { return output_; }

    RVec &params() { return params_; }
    const RVec &params() const { return params_; }
    Eigen::Index param_count() const { return params_.size(); }

    Eigen::Map<RMat> weight(int l);
    Eigen::Map<const RMat> weight(int l) const;
    Eigen::Map<RVec> bias(int l);
    Eigen::Map<const RVec> bias(int l) const;

    RMat forward(const RMat &X) const;
    RMat forward(const RMat &X, Tape &tape) const;

    /// Adds dL/dparams to grad and returns dL/dX for upstream gradient dY.
    RMat backward(const Tape &tape, const RMat &dY, RVec &grad) const;

    bool operator==(const Mlp &) const = default;

private:
    void layout();

    std::vector<int> sizes_;
    Activation output_ = Activation::linear;
    std::vector<Eigen::Index> w_off_;
    std::vector<Eigen::Index> b_off_;
    RVec params_;
};

} // namespace nafd::rl
