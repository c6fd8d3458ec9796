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

#include "nafd/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nafd
{

std::vector<double> RateReport::r_dl() const
{
    std::vector<double> r;
    for (const auto &t : dl)
        r.push_back(t.rate);
    return r;
}

std::vector<double> RateReport::r_ul() const
{
    std::vector<double> r;
    for (const auto &t : ul)
        r.push_back(t.rate);
    return r;
}

double capped_rate(double signal, double interference)
{
    double sinr = kSinrCeiling;
    if (interference > 0.0)
        sinr = std::min(signal / interference, kSinrCeiling);
    return std::log2(1.0 + std::max(sinr, 0.0));
}

namespace
{
double sinr_of(double signal, double interference)
{
    if (!(interference > 0.0))
        return kSinrCeiling;
    return std::clamp(signal / interference, 0.0, kSinrCeiling);
}

void check_sigma(double sigma2)
{
    if (!(sigma2 > 0.0))
        throw std::domain_error("rate bound: noise variance must be positive");
}
} // namespace

std::vector<DownlinkTerms> downlink_rate_lb(const std::vector<double> &eta, const DigitalPrecoder &precoder,
                                            const Grid<CMat> &R_h_tilde, const Grid<cd> &t_iui,
                                            const std::vector<double> &p_u, double sigma2, const FaultInjection &fault)
{
    check_sigma(sigma2);
    const std::size_t K = eta.size();
    const int n_tap = precoder.n_tap();
    if (R_h_tilde.rows() != K || R_h_tilde.cols() != static_cast<std::size_t>(n_tap) ||
        static_cast<std::size_t>(precoder.F.cols()) != K || t_iui.rows() != K || t_iui.cols() != p_u.size())
        throw std::invalid_argument("downlink_rate_lb: shape mismatch");
    std::vector<DownlinkTerms> out(K);
    for (std::size_t k = 0; k < K; ++k)
    {
        DownlinkTerms &t = out[k];
        for (int m = 0; m < n_tap; ++m)
            for (std::size_t i = 0; i < K; ++i)
            {
                const CVec f = precoder.f(m, static_cast<int>(i));
                t.dee += eta[i] * (f.adjoint() * R_h_tilde(k, static_cast<std::size_t>(m)) * f)(0).real();
            }
        if (fault.flip_dee_sign)
            t.dee = -t.dee;
        for (std::size_t j = 0; j < p_u.size(); ++j)
            t.iui += std::norm(t_iui(k, j)) * p_u[j];
        t.noise = sigma2;
        t.sinr = sinr_of(eta[k], t.dee + t.iui + t.noise);
        t.rate = std::log2(1.0 + t.sinr);
    }
    return out;
}

double kron_quadratic(const CMat &C, const Eigen::RowVectorXcd &a, const Eigen::RowVectorXcd &b)
{
    const Eigen::Index n = b.size();
    if (a.size() * n != C.rows() || C.rows() != C.cols())
        throw std::invalid_argument("kron_quadratic: shape mismatch");
    // X = (I (x) b) C, then M = X (I (x) b)^H, result a M a^H.
    CMat X(a.size(), C.cols());
    for (Eigen::Index p = 0; p < a.size(); ++p)
        X.row(p) = b * C.middleRows(p * n, n);
    CMat M(a.size(), a.size());
    for (Eigen::Index q = 0; q < a.size(); ++q)
        M.col(q) = X.middleCols(q * n, n) * b.adjoint();
    return (a * M * a.adjoint())(0).real();
}

std::vector<UplinkTerms> uplink_rate_lb(const std::vector<double> &p_u, const DigitalCombiner &combiner,
                                        const AnalogSet &analog, const DigitalPrecoder &precoder,
                                        const std::vector<double> &eta, const Grid<CMat> &C_ap,
                                        const Grid<CMat> &R_g_tilde, double sigma2)
{
    check_sigma(sigma2);
    const std::size_t J = p_u.size();
    const int n_rap = combiner.n_rap();
    const int n_tap = precoder.n_tap();
    if (static_cast<std::size_t>(combiner.V.rows()) != J || R_g_tilde.rows() != J ||
        R_g_tilde.cols() != static_cast<std::size_t>(n_rap) || C_ap.rows() != static_cast<std::size_t>(n_tap) ||
        C_ap.cols() != static_cast<std::size_t>(n_rap) || analog.U_rf.size() != static_cast<std::size_t>(n_rap) ||
        analog.W_rf.size() != static_cast<std::size_t>(n_tap) ||
        static_cast<std::size_t>(precoder.F.cols()) != eta.size())
        throw std::invalid_argument("uplink_rate_lb: shape mismatch");

    // Transmit directions a_{m,i} = (W_m f_{m,i})^T.
    Grid<Eigen::RowVectorXcd> a(static_cast<std::size_t>(n_tap), eta.size());
    for (int m = 0; m < n_tap; ++m)
        for (std::size_t i = 0; i < eta.size(); ++i)
            a(static_cast<std::size_t>(m), i) = (analog.W_rf[static_cast<std::size_t>(m)] * precoder.f(m, static_cast<int>(i))).transpose();

    std::vector<UplinkTerms> out(J);
    for (std::size_t j = 0; j < J; ++j)
    {
        if (combiner.V.row(static_cast<Eigen::Index>(j)).squaredNorm() == 0.0)
            throw std::domain_error("uplink_rate_lb: zero combiner row");
        UplinkTerms &t = out[j];
        for (int z = 0; z < n_rap; ++z)
        {
            const Eigen::RowVectorXcd v = combiner.v(z, static_cast<int>(j));
            if (v.squaredNorm() == 0.0)
                continue;
            const auto zu = static_cast<std::size_t>(z);
            for (std::size_t jp = 0; jp < J; ++jp)
                t.tee_user += p_u[jp] * (v * R_g_tilde(jp, zu) * v.adjoint())(0).real();
            const Eigen::RowVectorXcd b = v * analog.U_rf[zu].adjoint();
            t.noise += sigma2 * b.squaredNorm();
            const Eigen::Index n = b.size();
            for (int m = 0; m < n_tap; ++m)
            {
                const CMat &C = C_ap(static_cast<std::size_t>(m), zu);
                CMat X(n, C.cols());
                for (Eigen::Index p = 0; p < n; ++p)
                    X.row(p) = b * C.middleRows(p * n, n);
                CMat M(n, n);
                for (Eigen::Index q = 0; q < n; ++q)
                    M.col(q) = X.middleCols(q * n, n) * b.adjoint();
                for (std::size_t i = 0; i < eta.size(); ++i)
                {
                    const auto &ai = a(static_cast<std::size_t>(m), i);
                    t.tee_interap += eta[i] * (ai * M * ai.adjoint())(0).real();
                }
            }
        }
        t.tee = t.tee_user + t.tee_interap;
        t.sinr = sinr_of(p_u[j], t.tee + t.noise);
        t.rate = std::log2(1.0 + t.sinr);
    }
    return out;
}

double weighted_objective(const RateReport &report, double omega_d, double omega_u)
{
    if (omega_d < 0.0 || omega_u < 0.0 || std::abs(omega_d + omega_u - 1.0) > 1e-9)
        throw std::invalid_argument("weighted_objective: weights must be non-negative and sum to one");
    double dl = 0.0, ul = 0.0;
    for (const auto &t : report.dl)
        dl += t.rate;
    for (const auto &t : report.ul)
        ul += t.rate;
    return omega_d * dl + omega_u * ul;
}

RateReport evaluate_lower_bounds(const StaticDesign &d, const BeamformerSet &bf, const ChannelSet &ch,
                                 const PowerAllocation &alloc, const SystemConfig &cfg, const FaultInjection &fault)
{
    RateReport r;
    r.dl = downlink_rate_lb(alloc.eta, bf.precoder, d.dl_error_covariances(), ch.t_iui, alloc.p_u, d.sigma2, fault);
    r.ul = uplink_rate_lb(alloc.p_u, bf.combiner, bf.analog, bf.precoder, alloc.eta, d.interap_error_covariances(),
                          d.ul_error_covariances(), d.sigma2);
    r.objective = weighted_objective(r, cfg.omega_d, cfg.omega_u);
    return r;
}

RateReport realized_rates(const BeamformerSet &bf, const EstimateBundle &est, const ChannelSet &ch,
                          const PowerAllocation &alloc, const SystemConfig &cfg)
{
    const double sigma2 = cfg.noise_w();
    const std::size_t K = alloc.eta.size(), J = alloc.p_u.size();
    const int n_tap = bf.precoder.n_tap(), n_rap = bf.combiner.n_rap();
    RateReport r;
    r.dl.resize(K);
    for (std::size_t k = 0; k < K; ++k)
    {
        DownlinkTerms &t = r.dl[k];
        for (std::size_t i = 0; i < K; ++i)
        {
            cd leak = 0.0;
            for (int m = 0; m < n_tap; ++m)
            {
                const CVec err = est.h_eq(k, static_cast<std::size_t>(m)) - est.h_hat(k, static_cast<std::size_t>(m));
                leak += err.dot(bf.precoder.f(m, static_cast<int>(i)));
            }
            t.dee += alloc.eta[i] * std::norm(leak);
        }
        for (std::size_t j = 0; j < J; ++j)
            t.iui += std::norm(ch.t_iui(k, j)) * alloc.p_u[j];
        t.noise = sigma2;
        t.sinr = sinr_of(alloc.eta[k], t.dee + t.iui + t.noise);
        t.rate = std::log2(1.0 + t.sinr);
    }

    // Residual inter-AP coupling P_{m,z} = U_z^H (H - H_hat) W_m.
    Grid<CMat> P(static_cast<std::size_t>(n_tap), static_cast<std::size_t>(n_rap));
    for (int m = 0; m < n_tap; ++m)
        for (int z = 0; z < n_rap; ++z)
        {
            const auto mu = static_cast<std::size_t>(m), zu = static_cast<std::size_t>(z);
            P(mu, zu) = bf.analog.U_rf[zu].adjoint() * (ch.H_ap(mu, zu) - est.H_ap_hat(mu, zu)) * bf.analog.W_rf[mu];
        }
    r.ul.resize(J);
    for (std::size_t j = 0; j < J; ++j)
    {
        UplinkTerms &t = r.ul[j];
        for (std::size_t jp = 0; jp < J; ++jp)
        {
            cd leak = 0.0;
            for (int z = 0; z < n_rap; ++z)
            {
                const auto zu = static_cast<std::size_t>(z);
                leak += (bf.combiner.v(z, static_cast<int>(j)) * (est.g_eq(jp, zu) - est.g_hat(jp, zu)))(0);
            }
            t.tee_user += alloc.p_u[jp] * std::norm(leak);
        }
        for (std::size_t i = 0; i < K; ++i)
        {
            cd leak = 0.0;
            for (int z = 0; z < n_rap; ++z)
            {
                const Eigen::RowVectorXcd v = bf.combiner.v(z, static_cast<int>(j));
                for (int m = 0; m < n_tap; ++m)
                    leak += (v * P(static_cast<std::size_t>(m), static_cast<std::size_t>(z)) *
                             bf.precoder.f(m, static_cast<int>(i)))(0);
            }
            t.tee_interap += alloc.eta[i] * std::norm(leak);
        }
        for (int z = 0; z < n_rap; ++z)
            t.noise += sigma2 * (bf.combiner.v(z, static_cast<int>(j)) *
                                 bf.analog.U_rf[static_cast<std::size_t>(z)].adjoint()).squaredNorm();
        t.tee = t.tee_user + t.tee_interap;
        t.sinr = sinr_of(alloc.p_u[j], t.tee + t.noise);
        t.rate = std::log2(1.0 + t.sinr);
    }
    r.objective = weighted_objective(r, cfg.omega_d, cfg.omega_u);
    return r;
}

LeakageReport zf_leakage(const BeamformerSet &bf, const EstimateBundle &est, const PowerAllocation &alloc)
{
    const std::size_t K = alloc.eta.size(), J = alloc.p_u.size();
    const int n_tap = bf.precoder.n_tap(), n_rap = bf.combiner.n_rap();
    LeakageReport out;
    out.dl_signal.assign(K, 0.0);
    out.dl_leakage.assign(K, 0.0);
    out.ul_signal.assign(J, 0.0);
    out.ul_leakage.assign(J, 0.0);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t i = 0; i < K; ++i)
        {
            cd g = 0.0;
            for (int m = 0; m < n_tap; ++m)
                g += est.h_eq(k, static_cast<std::size_t>(m)).dot(bf.precoder.f(m, static_cast<int>(i)));
            (i == k ? out.dl_signal[k] : out.dl_leakage[k]) += alloc.eta[i] * std::norm(g);
        }
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t jp = 0; jp < J; ++jp)
        {
            cd g = 0.0;
            for (int z = 0; z < n_rap; ++z)
                g += (bf.combiner.v(z, static_cast<int>(j)) * est.g_eq(jp, static_cast<std::size_t>(z)))(0);
            (jp == j ? out.ul_signal[j] : out.ul_leakage[j]) += alloc.p_u[jp] * std::norm(g);
        }
    return out;
}

namespace
{
void mean_stderr(const std::vector<std::vector<double>> &samples, std::vector<double> &mean,
                 std::vector<double> &stderr_out)
{
    const std::size_t users = samples.empty() ? 0 : samples.front().size();
    const double n = static_cast<double>(samples.size());
    mean.assign(users, 0.0);
    stderr_out.assign(users, 0.0);
    for (const auto &s : samples)
        for (std::size_t u = 0; u < users; ++u)
            mean[u] += s[u];
    for (auto &m : mean)
        m /= n;
    for (const auto &s : samples)
        for (std::size_t u = 0; u < users; ++u)
            stderr_out[u] += (s[u] - mean[u]) * (s[u] - mean[u]);
    for (auto &e : stderr_out)
        e = std::sqrt(e / (n - 1.0) / n);
}
} // namespace

OracleReport mc_ergodic_rate(const SystemConfig &cfg, const Scenario &scenario, const AngleSet &angles,
                             const PipelineOptions &options, const AllocationRule &rule, int trials,
                             std::uint64_t seed, const FaultInjection &fault)
{
    if (trials < 100)
        throw std::invalid_argument("mc_ergodic_rate: need at least 100 trials");
    const StaticDesign design = design_static(cfg, scenario, angles, options);
    std::vector<std::vector<double>> dl(static_cast<std::size_t>(trials)), ul(dl.size()), lb_dl(dl.size()),
        lb_ul(dl.size());
    for (int t = 0; t < trials; ++t)
    {
        Rng rng = make_rng(seed, streams::mc_trial, static_cast<std::uint64_t>(t));
        const ChannelSet ch = draw_channels(cfg, scenario, angles, rng);
        const EstimateBundle est = estimate_all(design, ch, rng);
        const BeamformerSet bf = build_beamformers(design, est);
        const PowerAllocation alloc = rule(bf);
        const RateReport exact = realized_rates(bf, est, ch, alloc, cfg);
        const RateReport bound = evaluate_lower_bounds(design, bf, ch, alloc, cfg, fault);
        const auto ut = static_cast<std::size_t>(t);
        dl[ut] = exact.r_dl();
        ul[ut] = exact.r_ul();
        lb_dl[ut] = bound.r_dl();
        lb_ul[ut] = bound.r_ul();
    }
    OracleReport rep;
    rep.trials = trials;
    mean_stderr(dl, rep.dl_mean, rep.dl_stderr);
    mean_stderr(ul, rep.ul_mean, rep.ul_stderr);
    mean_stderr(lb_dl, rep.lb_dl_mean, rep.lb_dl_stderr);
    mean_stderr(lb_ul, rep.lb_ul_mean, rep.lb_ul_stderr);
    return rep;
}

OracleReport mc_ergodic_rate(const SystemConfig &cfg, const Scenario &scenario, const AngleSet &angles,
                             const PipelineOptions &options, const PowerAllocation &alloc, int trials,
                             std::uint64_t seed, const FaultInjection &fault)
{
    return mc_ergodic_rate(
        cfg, scenario, angles, options, [&alloc](const BeamformerSet &) { return alloc; }, trials, seed, fault);
}

} // namespace nafd
