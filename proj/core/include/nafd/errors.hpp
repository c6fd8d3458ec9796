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

#include <stdexcept>
#include <string>

namespace nafd
{

// Rejection sampling could not satisfy the protection distance.
struct GeometryInfeasible : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Requested matrix dimension exceeds the configured memory cap.
struct CapacityError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// A covariance has no eigen-direction above the rank tolerance.
struct NoSignalDirection : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Zero-forcing was requested on a rank-deficient channel.
struct SingularChannel : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Fewer orthogonal pilots than users.
struct ContaminationUnsupported : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

// Power normalization has nothing to normalize against.
struct DegenerateInput : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// Non-finite loss or parameters during learning.
struct TrainingDivergence : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct MissingCheckpoint : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

} // namespace nafd
