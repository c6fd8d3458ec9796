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

#include <doctest.h>

#include <cmath>

#include "nafd/errors.hpp"
#include "nafd/rates.hpp"
#include "nafd/rl/environment.hpp"

using namespace nafd;

namespace
{
DigitalPrecoder precoder_of(const CMat &F, int n_rf)
{
    DigitalPrecoder p;
    p.F = F;
    p.n_rf = n_rf;
    return p;
}

DigitalCombiner combiner_of(const CMat &V, int n_rf)
{
    DigitalCombiner c;
    c.V = V;
    c.n_rf = n_rf;
    return c;
}

SystemConfig small_system()
{
    SystemConfig cfg;
    cfg.n_tap = cfg.n_rap = 3;
    cfg.n_ul_users = cfg.n_dl_users = 2;
    cfg.n_ant = 4;
    cfg.n_rf = 2;
    return cfg;
}
} // namespace

TEST_CASE("downlink bound reference cases")
{
    const double s2 = 0.3;
    const DigitalPrecoder p = precoder_of(CMat::Identity(2, 2), 1);
    const Grid<CMat> Rz(2, 2, CMat::Zero(1, 1));
    const Grid<cd> t0(2, 1, cd(0.0, 0.0));
    const auto a = downlink_rate_lb({s2, s2}, p, Rz, t0, {0.0}, s2);
    CHECK(a[0].rate == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a[0].dee == 0.0);

    const Grid<cd> t1(2, 1, cd(1.0, 0.0));
    const auto b = downlink_rate_lb({s2, s2}, p, Rz, t1, {2.0}, s2);
    CHECK(b[0].iui == doctest::Approx(2.0));
    CHECK(b[1].noise == s2);
    CHECK_THROWS_AS(downlink_rate_lb({s2, s2}, p, Rz, t1, {2.0}, 0.0), std::domain_error);

    Rng rng(40);
    for (int t = 0; t < 100; ++t)
    {
        const DigitalPrecoder q = precoder_of(complex_normal_matrix(rng, 4, 2, 1.0), 2);
        Grid<CMat> R(2, 2);
        for (auto &r : R)
        {
            const CMat X = complex_normal_matrix(rng, 2, 2, 0.1);
            r = X * X.adjoint();
        }
        Grid<cd> tt(2, 2);
        for (auto &x : tt)
            x = complex_normal(rng, 0.5);
        std::vector<double> eta{uniform(rng, 0.1, 2.0), uniform(rng, 0.1, 2.0)};
        const std::vector<double> pu{uniform(rng, 0.0, 1.0), uniform(rng, 0.0, 1.0)};
        const double r0 = downlink_rate_lb(eta, q, R, tt, pu, 0.1)[0].rate;
        eta[0] *= 2.0;
        CHECK(downlink_rate_lb(eta, q, R, tt, pu, 0.1)[0].rate > r0);
        std::vector<double> pu2 = pu;
        pu2[1] += 0.5;
        CHECK(downlink_rate_lb(eta, q, R, tt, pu2, 0.1)[0].rate <= downlink_rate_lb(eta, q, R, tt, pu, 0.1)[0].rate);
    }
}

TEST_CASE("uplink bound reference cases")
{
    const int n = 3;
    const double s2 = 0.2;
    AnalogSet an;
    // Orthonormal-scaled U with U^H U = n I.
    Rng rng(41);
    const CMat Q = Eigen::HouseholderQR<CMat>(complex_normal_matrix(rng, n, n, 1.0)).householderQ();
    an.U_rf = {std::sqrt(double(n)) * Q.leftCols(2)};
    an.W_rf = {CMat::Ones(n, 2)};
    Eigen::RowVectorXcd v = complex_normal_matrix(rng, 1, 2, 1.0);
    v /= v.norm();
    const DigitalCombiner c = combiner_of(v, 2);
    const DigitalPrecoder p = precoder_of(complex_normal_matrix(rng, 2, 1, 1.0), 2);
    const Grid<CMat> C0(1, 1, CMat::Zero(n * n, n * n));
    const Grid<CMat> G0(1, 1, CMat::Zero(2, 2));
    const double probe = s2 * (v * an.U_rf[0].adjoint()).squaredNorm();
    const auto u = uplink_rate_lb({probe}, c, an, p, {1.0}, C0, G0, s2);
    CHECK(u[0].rate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(u[0].noise == doctest::Approx(s2 * n).epsilon(1e-12));
    CHECK(u[0].tee == 0.0);
    const auto u2 = uplink_rate_lb({2.0 * probe}, c, an, p, {1.0}, C0, G0, s2);
    CHECK(u2[0].rate > u[0].rate);

    const DigitalCombiner zero = combiner_of(Eigen::RowVectorXcd::Zero(2), 2);
    CHECK_THROWS_AS(uplink_rate_lb({1.0}, zero, an, p, {1.0}, C0, G0, s2), std::domain_error);
    CHECK_THROWS_AS(uplink_rate_lb({1.0}, c, an, p, {1.0}, C0, G0, -1.0), std::domain_error);
}

TEST_CASE("Kronecker quadratic equals a Monte Carlo quadratic form")
{
    Rng rng(42);
    const int n = 3;
    const CMat X = complex_normal_matrix(rng, n * n, 4, 1.0);
    const CMat C = X * X.adjoint();
    const Eigen::RowVectorXcd a = complex_normal_matrix(rng, 1, n, 1.0);
    const Eigen::RowVectorXcd b = complex_normal_matrix(rng, 1, n, 1.0);
    const double exact = kron_quadratic(C, a, b);
    CMat ab(1, n * n);
    for (int p = 0; p < n; ++p)
        ab.middleCols(p * n, n) = a(p) * b;
    CHECK(exact == doctest::Approx((ab * C * ab.adjoint())(0).real()).epsilon(1e-12));
    const int trials = 10000;
    double acc = 0.0;
    for (int t = 0; t < trials; ++t)
    {
        const CMat E = unvec(X * complex_normal_vector(rng, 4, 1.0), n, n);
        acc += std::norm((b * E * a.transpose())(0));
    }
    CHECK(std::abs(acc / trials - exact) / exact < 0.03);
}

TEST_CASE("capped rate and weighted objective")
{
    CHECK(capped_rate(1.0, 0.0) == doctest::Approx(std::log2(1.0 + kSinrCeiling)));
    CHECK(capped_rate(1.0, -1.0) == doctest::Approx(std::log2(1.0 + kSinrCeiling)));
    CHECK(capped_rate(3.0, 1.0) == doctest::Approx(2.0));

    RateReport r;
    r.dl.resize(2);
    r.ul.resize(3);
    for (auto &t : r.dl)
        t.rate = 1.5;
    for (auto &t : r.ul)
        t.rate = 1.5;
    CHECK(weighted_objective(r, 0.5, 0.5) == doctest::Approx(1.5 * 5 / 2.0));
    r.ul[0].rate = 7.0;
    CHECK(weighted_objective(r, 1.0, 0.0) == doctest::Approx(3.0));
    const double before = weighted_objective(r, 0.3, 0.7);
    std::swap(r.ul[0], r.ul[2]);
    std::swap(r.dl[0], r.dl[1]);
    CHECK(weighted_objective(r, 0.3, 0.7) == doctest::Approx(before));
    CHECK_THROWS_AS(weighted_objective(r, 0.6, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(weighted_objective(r, -0.5, 1.5), std::invalid_argument);
}

TEST_CASE("zero error covariance weakly raises the bounds")
{
    const SystemConfig cfg = small_system();
    Rng rng(43);
    const Scenario s = generate_topology(cfg, rng);
    const AngleSet ang = draw_angles(cfg, s, rng);
    const StaticDesign d = design_static(cfg, s, ang);
    const ChannelSet ch = draw_channels(cfg, s, ang, rng);
    const EstimateBundle est = estimate_all(d, ch, rng);
    const BeamformerSet bf = build_beamformers(d, est);
    const double eta = equal_downlink_eta(cfg.p_d_w(), bf.analog.W_rf, bf.precoder);
    const PowerAllocation alloc{{eta, eta}, {cfg.p_u_w(), cfg.p_u_w()}};
    const RateReport r = evaluate_lower_bounds(d, bf, ch, alloc, cfg);
    Grid<CMat> Rz = d.dl_error_covariances();
    for (auto &m : Rz)
        m.setZero();
    const auto dl0 = downlink_rate_lb(alloc.eta, bf.precoder, Rz, ch.t_iui, alloc.p_u, d.sigma2);
    Grid<CMat> Cz = d.interap_error_covariances();
    for (auto &m : Cz)
        m.setZero();
    const auto ul0 = uplink_rate_lb(alloc.p_u, bf.combiner, bf.analog, bf.precoder, alloc.eta, Cz,
                                    d.ul_error_covariances(), d.sigma2);
    for (std::size_t k = 0; k < 2; ++k)
    {
        CHECK(dl0[k].rate >= r.dl[k].rate);
        CHECK(ul0[k].rate >= r.ul[k].rate);
        CHECK(r.dl[k].dee >= 0.0);
        CHECK(r.ul[k].tee_user >= 0.0);
        CHECK(r.ul[k].tee_interap >= 0.0);
        CHECK(r.dl[k].rate >= 0.0);
    }
    CHECK(r.objective == doctest::Approx(weighted_objective(r, cfg.omega_d, cfg.omega_u)));
}

TEST_CASE("perfect CSI zero-forcing leaves no inter-user leakage")
{
    const SystemConfig cfg;
    Rng rng(44);
    const Scenario s = generate_topology(cfg, rng);
    const AngleSet ang = draw_angles(cfg, s, rng);
    const StaticDesign d = design_static(cfg, s, ang);
    for (int t = 0; t < 20; ++t)
    {
        const ChannelSet ch = draw_channels(cfg, s, ang, rng);
        const EstimateBundle est = perfect_csi(d, ch);
        const BeamformerSet bf = build_beamformers(d, est);
        const double eta = equal_downlink_eta(cfg.p_d_w(), bf.analog.W_rf, bf.precoder);
        const PowerAllocation alloc{std::vector<double>(4, eta), std::vector<double>(4, cfg.p_u_w())};
        const LeakageReport lk = zf_leakage(bf, est, alloc);
        for (std::size_t k = 0; k < 4; ++k)
        {
            CHECK(lk.dl_leakage[k] <= 1e-10 * lk.dl_signal[k]);
            CHECK(lk.ul_leakage[k] <= 1e-10 * lk.ul_signal[k]);
        }
    }
}

TEST_CASE("Monte Carlo oracle: Jensen bound, stderr scaling, fault detection")
{
    SystemConfig cfg = small_system();
    cfg.pilot_user_dbm = 0.0;
    cfg.pilot_ap_dbm = 0.0;
    Rng rng(45);
    const Scenario s = generate_topology(cfg, rng);
    const AngleSet ang = draw_angles(cfg, s, rng);
    const AllocationRule rule = [&cfg](const BeamformerSet &bf) {
        Rng unused(0);
        return rl::baseline_allocation(rl::BaselineScheme::ul_max, cfg, bf, unused);
    };
    const OracleReport a = mc_ergodic_rate(cfg, s, ang, {}, rule, 400, 1);
    const OracleReport b = mc_ergodic_rate(cfg, s, ang, {}, rule, 800, 1);
    double ratio = 0.0;
    for (std::size_t k = 0; k < 2; ++k)
    {
        CHECK(a.lb_dl_mean[k] <= a.dl_mean[k] + 3.0 * std::hypot(a.dl_stderr[k], a.lb_dl_stderr[k]));
        CHECK(a.lb_ul_mean[k] <= a.ul_mean[k] + 3.0 * std::hypot(a.ul_stderr[k], a.lb_ul_stderr[k]));
        ratio += b.dl_stderr[k] / a.dl_stderr[k] + b.ul_stderr[k] / a.ul_stderr[k];
    }
    CHECK(std::abs(ratio / 4.0 - 1.0 / std::sqrt(2.0)) < 0.15 / std::sqrt(2.0));
    CHECK_THROWS_AS(mc_ergodic_rate(cfg, s, ang, {}, rule, 50, 1), std::invalid_argument);

    FaultInjection flip;
    flip.flip_dee_sign = true;
    const OracleReport f = mc_ergodic_rate(cfg, s, ang, {}, rule, 400, 1, flip);
    bool violated = false;
    for (std::size_t k = 0; k < 2; ++k)
        violated = violated || f.lb_dl_mean[k] > f.dl_mean[k] + 3.0 * std::hypot(f.dl_stderr[k], f.lb_dl_stderr[k]);
    CHECK(violated);
}
