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

#include "nafd/beamforming.hpp"
#include "nafd/channel.hpp"
#include "nafd/estimation.hpp"
#include "nafd/random.hpp"
#include "nafd/scenario.hpp"

namespace nafd
{

struct PipelineOptions
{
    CouplingRealization coupling = CouplingRealization::designed;
    CombinerMode combiner = CombinerMode::joint;
};

/// Everything that depends only on the AngleSet: covariances, analog
/// matrices, coupling designs and linear estimators.
struct StaticDesign
{
    AngleSet angles;
    CovarianceSet cov;
    AnalogSet analog;
    Grid<CouplingDesign> coupling;    // (m, z)
    Grid<CMat> A;                     // realized coupling per (m, z)
    Grid<InterApEstimator> interap;   // (m, z)
    Grid<EquivalentEstimator> dl;     // (k, m)
    Grid<EquivalentEstimator> ul;     // (j, z)
    CMat dl_pilots;
    CMat ul_pilots;
    std::vector<int> serving;
    double rho_ap = 0.0;
    double rho_user = 0.0;
    double sigma2 = 0.0;
    PipelineOptions options;

    Grid<CMat> dl_error_covariances() const;
    Grid<CMat> ul_error_covariances() const;
    Grid<CMat> interap_error_covariances() const;
};

StaticDesign design_static(const SystemConfig &cfg, const Scenario &scenario, const AngleSet &angles,
                           const PipelineOptions &options = {});

/// True equivalent channels, their estimates and the inter-AP estimates of one realization.
struct EstimateBundle
{
    Grid<CVec> h_eq;  // (k, m)
    Grid<CVec> g_eq;  // (j, z)
    Grid<CVec> h_hat; // (k, m)
    Grid<CVec> g_hat; // (j, z)
    Grid<CMat> H_ap_hat;
};

EstimateBundle estimate_all(const StaticDesign &design, const ChannelSet &channels, Rng &rng);

/// Estimates replaced by the true channels.
EstimateBundle perfect_csi(const StaticDesign &design, const ChannelSet &channels);

struct BeamformerSet
{
    AnalogSet analog;
    DigitalPrecoder precoder;
    DigitalCombiner combiner;
};

BeamformerSet build_beamformers(const StaticDesign &design, const EstimateBundle &est);

} // namespace nafd
