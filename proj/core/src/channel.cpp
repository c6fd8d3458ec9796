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

#include "nafd/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nafd/errors.hpp"

namespace nafd
{

CVec steering_vector(double theta, int n)
{
    if (n < 1)
        throw std::invalid_argument("steering_vector: n must be >= 1");
    CVec v(n);
    const double phase = kPi * std::sin(theta);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int p = 0; p < n; ++p)
        v(p) = std::polar(scale, phase * p);
    return v;
}

CVec vector_channel(std::span<const cd> gains, std::span<const double> angles, int n)
{
    if (gains.size() != angles.size())
        throw std::invalid_argument("vector_channel: gains/angles size mismatch");
    CVec h = CVec::Zero(n);
    for (std::size_t l = 0; l < gains.size(); ++l)
        h += gains[l] * steering_vector(angles[l], n);
    return h;
}

CMat interap_channel(std::span<const cd> gains, const InterApAngles &angles, int n)
{
    if (gains.size() != angles.rx.size() || gains.size() != angles.tx.size())
        throw std::invalid_argument("interap_channel: gains/angles size mismatch");
    CMat H = CMat::Zero(n, n);
    for (std::size_t l = 0; l < gains.size(); ++l)
        H += gains[l] * steering_vector(angles.rx[l], n) * steering_vector(angles.tx[l], n).adjoint();
    return H;
}

namespace
{
std::vector<double> draw_path_angles(int n_paths, Rng &rng)
{
    std::vector<double> a(static_cast<std::size_t>(n_paths));
    for (auto &x : a)
        x = uniform(rng, -kPi, kPi);
    return a;
}

std::vector<cd> draw_gains(std::size_t n_paths, double beta, Rng &rng)
{
    std::vector<cd> g(n_paths);
    for (auto &x : g)
        x = complex_normal(rng, beta);
    return g;
}
} // namespace

CVec sample_vector_given_angles(double beta, std::span<const double> angles, int n, Rng &rng)
{
    const auto gains = draw_gains(angles.size(), beta, rng);
    return vector_channel(gains, angles, n);
}

CMat sample_interap_given_angles(double beta, const InterApAngles &angles, int n, Rng &rng)
{
    const auto gains = draw_gains(angles.rx.size(), beta, rng);
    return interap_channel(gains, angles, n);
}

VectorDraw sample_vector_channel(double beta, int n_paths, int n, Rng &rng)
{
    if (n_paths < 1)
        throw std::invalid_argument("sample_vector_channel: need at least one path");
    VectorDraw d;
    d.angles = draw_path_angles(n_paths, rng);
    d.channel = sample_vector_given_angles(beta, d.angles, n, rng);
    return d;
}

InterApDraw sample_interap_channel(double beta, int n_paths, int n, Rng &rng)
{
    if (n_paths < 1)
        throw std::invalid_argument("sample_interap_channel: need at least one path");
    InterApDraw d;
    d.angles.rx = draw_path_angles(n_paths, rng);
    d.angles.tx = draw_path_angles(n_paths, rng);
    d.channel = sample_interap_given_angles(beta, d.angles, n, rng);
    return d;
}

cd sample_iui(double beta, Rng &rng)
{
    if (beta < 0.0)
        throw std::invalid_argument("sample_iui: beta must be non-negative");
    return complex_normal(rng, beta);
}

CMat vector_covariance(std::span<const double> angles, double beta, int n)
{
    CMat R = CMat::Zero(n, n);
    for (double theta : angles)
    {
        const CVec v = steering_vector(theta, n);
        R += v * v.adjoint();
    }
    return beta * R;
}

CMat interap_covariance_factor(const InterApAngles &angles, double beta, int n)
{
    if (angles.rx.size() != angles.tx.size())
        throw std::invalid_argument("interap_covariance_factor: angle count mismatch");
    const auto L = static_cast<Eigen::Index>(angles.rx.size());
    CMat F(static_cast<Eigen::Index>(n) * n, L);
    const double s = std::sqrt(beta);
    for (Eigen::Index l = 0; l < L; ++l)
    {
        const CMat outer = steering_vector(angles.rx[l], n) * steering_vector(angles.tx[l], n).adjoint();
        F.col(l) = s * vec(outer);
    }
    return F;
}

CMat interap_covariance(const InterApAngles &angles, double beta, int n)
{
    if (n > kMaxCovarianceAntennas)
        throw CapacityError("interap_covariance: n_ant = " + std::to_string(n) + " exceeds the cap of " +
                            std::to_string(kMaxCovarianceAntennas));
    const CMat F = interap_covariance_factor(angles, beta, n);
    return F * F.adjoint();
}

AngleSet draw_angles(const SystemConfig &cfg, const Scenario &s, Rng &rng)
{
    AngleSet a;
    a.dl = Grid<std::vector<double>>(s.beta_dl.rows(), s.beta_dl.cols());
    a.ul = Grid<std::vector<double>>(s.beta_ul.rows(), s.beta_ul.cols());
    a.ap = Grid<InterApAngles>(s.beta_ap.rows(), s.beta_ap.cols());
    for (auto &x : a.dl)
        x = draw_path_angles(cfg.n_paths, rng);
    for (auto &x : a.ul)
        x = draw_path_angles(cfg.n_paths, rng);
    for (auto &x : a.ap)
    {
        x.rx = draw_path_angles(cfg.n_paths, rng);
        x.tx = draw_path_angles(cfg.n_paths, rng);
    }
    return a;
}

ChannelSet draw_channels(const SystemConfig &cfg, const Scenario &s, const AngleSet &angles, Rng &rng)
{
    const int n = cfg.n_ant;
    ChannelSet c;
    c.angles = angles;
    c.h = Grid<CVec>(s.beta_dl.rows(), s.beta_dl.cols());
    c.g = Grid<CVec>(s.beta_ul.rows(), s.beta_ul.cols());
    c.H_ap = Grid<CMat>(s.beta_ap.rows(), s.beta_ap.cols());
    c.t_iui = Grid<cd>(s.beta_iui.rows(), s.beta_iui.cols());
    for (std::size_t k = 0; k < c.h.rows(); ++k)
        for (std::size_t m = 0; m < c.h.cols(); ++m)
            c.h(k, m) = sample_vector_given_angles(s.beta_dl(k, m), angles.dl(k, m), n, rng);
    for (std::size_t j = 0; j < c.g.rows(); ++j)
        for (std::size_t z = 0; z < c.g.cols(); ++z)
            c.g(j, z) = sample_vector_given_angles(s.beta_ul(j, z), angles.ul(j, z), n, rng);
    for (std::size_t m = 0; m < c.H_ap.rows(); ++m)
        for (std::size_t z = 0; z < c.H_ap.cols(); ++z)
            c.H_ap(m, z) = sample_interap_given_angles(s.beta_ap(m, z), angles.ap(m, z), n, rng);
    for (std::size_t k = 0; k < c.t_iui.rows(); ++k)
        for (std::size_t j = 0; j < c.t_iui.cols(); ++j)
            c.t_iui(k, j) = sample_iui(s.beta_iui(k, j), rng);
    return c;
}

ChannelSet sample_channel_set(const SystemConfig &cfg, const Scenario &s, Rng &rng)
{
    const AngleSet angles = draw_angles(cfg, s, rng);
    return draw_channels(cfg, s, angles, rng);
}

CovarianceSet covariance_set(const SystemConfig &cfg, const Scenario &s, const AngleSet &angles)
{
    const int n = cfg.n_ant;
    CovarianceSet r;
    r.R_h = Grid<CMat>(angles.dl.rows(), angles.dl.cols());
    r.R_g = Grid<CMat>(angles.ul.rows(), angles.ul.cols());
    r.R_ap = Grid<CMat>(angles.ap.rows(), angles.ap.cols());
    r.ap_factor = Grid<CMat>(angles.ap.rows(), angles.ap.cols());
    for (std::size_t k = 0; k < r.R_h.rows(); ++k)
        for (std::size_t m = 0; m < r.R_h.cols(); ++m)
            r.R_h(k, m) = vector_covariance(angles.dl(k, m), s.beta_dl(k, m), n);
    for (std::size_t j = 0; j < r.R_g.rows(); ++j)
        for (std::size_t z = 0; z < r.R_g.cols(); ++z)
            r.R_g(j, z) = vector_covariance(angles.ul(j, z), s.beta_ul(j, z), n);
    for (std::size_t m = 0; m < r.R_ap.rows(); ++m)
        for (std::size_t z = 0; z < r.R_ap.cols(); ++z)
        {
            r.ap_factor(m, z) = interap_covariance_factor(angles.ap(m, z), s.beta_ap(m, z), n);
            r.R_ap(m, z) = interap_covariance(angles.ap(m, z), s.beta_ap(m, z), n);
        }
    return r;
}

} // namespace nafd
