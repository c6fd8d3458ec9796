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
#include <functional>
#include <vector>

#include "nafd/pipeline.hpp"

namespace nafd
{

inline constexpr double kSinrCeiling = 1e12;

struct DownlinkTerms
{
    double dee = 0.0;   // estimation-error leakage
    double iui = 0.0;   // inter-user interference
    double noise = 0.0;
    double sinr = 0.0;
    double rate = 0.0;
};

struct UplinkTerms
{
    double tee_user = 0.0;   // uplink estimation error part of TEE
    double tee_interap = 0.0; // inter-AP residual part of TEE
    double tee = 0.0;
    double noise = 0.0;
    double sinr = 0.0;
    double rate = 0.0;
};

struct RateReport
{
    std::vector<DownlinkTerms> dl;
    std::vector<UplinkTerms> ul;
    double objective = 0.0;

    std::vector<double> r_dl() const;
    std::vector<double> r_ul() const;
};

/// Test-only mutation switches.
struct FaultInjection
{
    bool flip_dee_sign = false;
};

/// log2(1 + min(sinr, kSinrCeiling)); non-positive interference saturates at the ceiling.
double capped_rate(double signal, double interference);

std::vector<DownlinkTerms> downlink_rate_lb(const std::vector<double> &eta, const DigitalPrecoder &precoder,
                                            const Grid<CMat> &R_h_tilde, const Grid<cd> &t_iui,
                                            const std::vector<double> &p_u, double sigma2,
                                            const FaultInjection &fault = {});

std::vector<UplinkTerms> uplink_rate_lb(const std::vector<double> &p_u, const DigitalCombiner &combiner,
                                        const AnalogSet &analog, const DigitalPrecoder &precoder,
                                        const std::vector<double> &eta, const Grid<CMat> &C_ap,
                                        const Grid<CMat> &R_g_tilde, double sigma2);

/// (a (x) b) C (a (x) b)^H for row vectors a, b of length n and an n^2 x n^2 C.
double kron_quadratic(const CMat &C, const Eigen::RowVectorXcd &a, const Eigen::RowVectorXcd &b);

double weighted_objective(const RateReport &report, double omega_d, double omega_u);

RateReport evaluate_lower_bounds(const StaticDesign &design, const BeamformerSet &bf, const ChannelSet &channels,
                                 const PowerAllocation &alloc, const SystemConfig &cfg,
                                 const FaultInjection &fault = {});

/// Rates with the realized estimation errors and inter-AP residual treated as
/// Gaussian noise, averaged over data symbols and receiver noise.
RateReport realized_rates(const BeamformerSet &bf, const EstimateBundle &est, const ChannelSet &channels,
                          const PowerAllocation &alloc, const SystemConfig &cfg);

/// Signal and inter-user leakage through the true channels after ZF.
struct LeakageReport
{
    std::vector<double> dl_signal;
    std::vector<double> dl_leakage;
    std::vector<double> ul_signal;
    std::vector<double> ul_leakage;
};

LeakageReport zf_leakage(const BeamformerSet &bf, const EstimateBundle &est, const PowerAllocation &alloc);

struct OracleReport
{
    int trials = 0;
    std::vector<double> dl_mean, dl_stderr;
    std::vector<double> ul_mean, ul_stderr;
    std::vector<double> lb_dl_mean, lb_dl_stderr;
    std::vector<double> lb_ul_mean, lb_ul_stderr;
};

using AllocationRule = std::function<PowerAllocation(const BeamformerSet &)>;

/// Monte Carlo over small-scale fading with the AngleSet fixed: each trial
/// draws channels, estimates, builds beamformers and records both the
/// realized rate and the closed-form bound.
OracleReport mc_ergodic_rate(const SystemConfig &cfg, const Scenario &scenario, const AngleSet &angles,
                             const PipelineOptions &options, const AllocationRule &rule, int trials,
                             std::uint64_t seed, const FaultInjection &fault = {});

OracleReport mc_ergodic_rate(const SystemConfig &cfg, const Scenario &scenario, const AngleSet &angles,
                             const PipelineOptions &options, const PowerAllocation &alloc, int trials,
                             std::uint64_t seed, const FaultInjection &fault = {});

} // namespace nafd
