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

#include "nafd/pipeline.hpp"

#include <stdexcept>

namespace nafd
{

namespace
{
template <class T, class F>
Grid<CMat> map_grid(const Grid<T> &g, F f)
{
    Grid<CMat> out(g.rows(), g.cols());
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c)
            out(r, c) = f(g(r, c));
    return out;
}
} // namespace

Grid<CMat> StaticDesign::dl_error_covariances() const
{
    return map_grid(dl, [](const EquivalentEstimator &e) { return e.R_tilde; });
}

Grid<CMat> StaticDesign::ul_error_covariances() const
{
    return map_grid(ul, [](const EquivalentEstimator &e) { return e.R_tilde; });
}

Grid<CMat> StaticDesign::interap_error_covariances() const
{
    return map_grid(interap, [](const InterApEstimator &e) { return e.C; });
}

StaticDesign design_static(const SystemConfig &cfg, const Scenario &scenario, const AngleSet &angles,
                           const PipelineOptions &options)
{
    cfg.validate();
    StaticDesign d;
    d.options = options;
    d.angles = angles;
    d.sigma2 = cfg.noise_w();
    d.rho_ap = dbm_to_watt(cfg.pilot_ap_dbm);
    d.rho_user = dbm_to_watt(cfg.pilot_user_dbm);
    d.cov = covariance_set(cfg, scenario, angles);
    d.analog = design_analog(d.cov, cfg.n_rf);
    d.serving = strongest_rap(scenario);

    const std::size_t K = scenario.beta_dl.rows(), n_tap = scenario.beta_dl.cols();
    const std::size_t J = scenario.beta_ul.rows(), n_rap = scenario.beta_ul.cols();

    d.coupling = Grid<CouplingDesign>(n_tap, n_rap);
    d.A = Grid<CMat>(n_tap, n_rap);
    d.interap = Grid<InterApEstimator>(n_tap, n_rap);
    const bool kron = options.coupling == CouplingRealization::kronecker;
    for (std::size_t m = 0; m < n_tap; ++m)
        for (std::size_t z = 0; z < n_rap; ++z)
        {
            const CMat &R = d.cov.R_ap(m, z);
            d.coupling(m, z) = optimal_coupling(R, d.rho_ap, d.sigma2, cfg.n_rf, kron);
            d.A(m, z) = kron ? kron_coupling(d.coupling(m, z).rf.W, d.coupling(m, z).rf.U) : d.coupling(m, z).A;
            d.interap(m, z) = make_interap_estimator(R, d.A(m, z), d.rho_ap, d.sigma2);
        }

    d.dl_pilots = make_pilots(static_cast<int>(K), static_cast<int>(K));
    d.ul_pilots = make_pilots(static_cast<int>(J), static_cast<int>(J));
    d.dl = Grid<EquivalentEstimator>(K, n_tap);
    for (std::size_t m = 0; m < n_tap; ++m)
    {
        std::vector<CMat> r_eq(K);
        for (std::size_t k = 0; k < K; ++k)
            r_eq[k] = equivalent_covariance(d.analog.W_rf[m], d.cov.R_h(k, m));
        for (std::size_t k = 0; k < K; ++k)
            d.dl(k, m) = make_equivalent_estimator(d.dl_pilots, static_cast<int>(k), r_eq, d.rho_user, d.sigma2);
    }
    d.ul = Grid<EquivalentEstimator>(J, n_rap);
    for (std::size_t z = 0; z < n_rap; ++z)
    {
        std::vector<CMat> r_eq(J);
        for (std::size_t j = 0; j < J; ++j)
            r_eq[j] = equivalent_covariance(d.analog.U_rf[z], d.cov.R_g(j, z));
        for (std::size_t j = 0; j < J; ++j)
            d.ul(j, z) = make_equivalent_estimator(d.ul_pilots, static_cast<int>(j), r_eq, d.rho_user, d.sigma2);
    }
    return d;
}

namespace
{
void equivalent_truth(const StaticDesign &d, const ChannelSet &ch, EstimateBundle &b)
{
    b.h_eq = Grid<CVec>(ch.h.rows(), ch.h.cols());
    b.g_eq = Grid<CVec>(ch.g.rows(), ch.g.cols());
    for (std::size_t k = 0; k < ch.h.rows(); ++k)
        for (std::size_t m = 0; m < ch.h.cols(); ++m)
            b.h_eq(k, m) = d.analog.W_rf[m].adjoint() * ch.h(k, m);
    for (std::size_t j = 0; j < ch.g.rows(); ++j)
        for (std::size_t z = 0; z < ch.g.cols(); ++z)
            b.g_eq(j, z) = d.analog.U_rf[z].adjoint() * ch.g(j, z);
}
} // namespace

EstimateBundle estimate_all(const StaticDesign &d, const ChannelSet &ch, Rng &rng)
{
    EstimateBundle b;
    equivalent_truth(d, ch, b);
    const std::size_t K = ch.h.rows(), n_tap = ch.h.cols();
    const std::size_t J = ch.g.rows(), n_rap = ch.g.cols();

    b.h_hat = Grid<CVec>(K, n_tap);
    for (std::size_t m = 0; m < n_tap; ++m)
    {
        std::vector<CVec> links(K);
        for (std::size_t k = 0; k < K; ++k)
            links[k] = ch.h(k, m);
        const CMat Y = simulate_user_pilot(links, d.analog.W_rf[m], d.dl_pilots, d.rho_user, d.sigma2, rng);
        for (std::size_t k = 0; k < K; ++k)
            b.h_hat(k, m) = d.dl(k, m).gain * (Y * d.dl_pilots.col(static_cast<Eigen::Index>(k)).conjugate());
    }
    b.g_hat = Grid<CVec>(J, n_rap);
    for (std::size_t z = 0; z < n_rap; ++z)
    {
        std::vector<CVec> links(J);
        for (std::size_t j = 0; j < J; ++j)
            links[j] = ch.g(j, z);
        const CMat Y = simulate_user_pilot(links, d.analog.U_rf[z], d.ul_pilots, d.rho_user, d.sigma2, rng);
        for (std::size_t j = 0; j < J; ++j)
            b.g_hat(j, z) = d.ul(j, z).gain * (Y * d.ul_pilots.col(static_cast<Eigen::Index>(j)).conjugate());
    }
    b.H_ap_hat = Grid<CMat>(ch.H_ap.rows(), ch.H_ap.cols());
    for (std::size_t m = 0; m < ch.H_ap.rows(); ++m)
        for (std::size_t z = 0; z < ch.H_ap.cols(); ++z)
        {
            const CVec y = simulate_coupled_pilot(ch.H_ap(m, z), d.A(m, z), d.rho_ap, d.sigma2, rng);
            b.H_ap_hat(m, z) = d.interap(m, z).estimate(y);
        }
    return b;
}

EstimateBundle perfect_csi(const StaticDesign &d, const ChannelSet &ch)
{
    EstimateBundle b;
    equivalent_truth(d, ch, b);
    b.h_hat = b.h_eq;
    b.g_hat = b.g_eq;
    b.H_ap_hat = ch.H_ap;
    return b;
}

BeamformerSet build_beamformers(const StaticDesign &d, const EstimateBundle &est)
{
    BeamformerSet bf;
    bf.analog = d.analog;
    bf.precoder = zf_precoder(est.h_hat);
    bf.combiner = zf_combiner(est.g_hat, d.options.combiner, d.serving);
    return bf;
}

} // namespace nafd
