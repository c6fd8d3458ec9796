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

#include "nafd/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nafd/errors.hpp"

namespace nafd
{

CMat pinv(const CMat &M, double rel_tol)
{
    if (M.size() == 0)
        return CMat::Zero(M.cols(), M.rows());
    Eigen::BDCSVD<CMat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVec &s = svd.singularValues();
    const double cut = rel_tol * (s.size() > 0 ? s(0) : 0.0);
    RVec inv = RVec::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut && s(i) > 0.0)
            inv(i) = 1.0 / s(i);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

double condition_number(const CMat &M)
{
    Eigen::BDCSVD<CMat> svd(M);
    const RVec &s = svd.singularValues();
    if (s.size() == 0)
        return std::numeric_limits<double>::infinity();
    const double lo = s(s.size() - 1);
    if (!(lo > 0.0))
        return std::numeric_limits<double>::infinity();
    return s(0) / lo;
}

CMat analog_from_covariance(const CMat &R_bar, int n_rf)
{
    if (R_bar.rows() != R_bar.cols())
        throw std::invalid_argument("analog_from_covariance: covariance must be square");
    if (n_rf < 1 || n_rf > R_bar.rows())
        throw std::invalid_argument("analog_from_covariance: n_rf must lie in [1, n]");
    Eigen::SelfAdjointEigenSolver<CMat> eig(hermitian_part(R_bar));
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("analog_from_covariance: eigendecomposition failed");
    const Eigen::Index n = R_bar.rows();
    CMat W(n, n_rf);
    for (int c = 0; c < n_rf; ++c)
    {
        const auto col = eig.eigenvectors().col(n - 1 - c);
        for (Eigen::Index p = 0; p < n; ++p)
            W(p, c) = std::polar(1.0, std::arg(col(p)));
    }
    return W;
}

AnalogSet design_analog(const CovarianceSet &cov, int n_rf)
{
    AnalogSet a;
    const std::size_t K = cov.R_h.rows(), n_tap = cov.R_h.cols();
    const std::size_t J = cov.R_g.rows(), n_rap = cov.R_g.cols();
    for (std::size_t m = 0; m < n_tap; ++m)
    {
        CMat R = CMat::Zero(cov.R_h(0, m).rows(), cov.R_h(0, m).cols());
        for (std::size_t k = 0; k < K; ++k)
            R += cov.R_h(k, m);
        a.W_rf.push_back(analog_from_covariance(R / static_cast<double>(K), n_rf));
    }
    for (std::size_t z = 0; z < n_rap; ++z)
    {
        CMat R = CMat::Zero(cov.R_g(0, z).rows(), cov.R_g(0, z).cols());
        for (std::size_t j = 0; j < J; ++j)
            R += cov.R_g(j, z);
        a.U_rf.push_back(analog_from_covariance(R / static_cast<double>(J), n_rf));
    }
    return a;
}

namespace
{
// Grid(user, ap) of n_rf vectors -> (n_ap n_rf) x users.
CMat stack(const Grid<CVec> &g)
{
    const auto users = static_cast<Eigen::Index>(g.rows());
    const auto aps = static_cast<Eigen::Index>(g.cols());
    if (users == 0 || aps == 0)
        throw std::invalid_argument("stack: empty channel grid");
    const Eigen::Index n_rf = g(0, 0).size();
    CMat S(aps * n_rf, users);
    for (Eigen::Index u = 0; u < users; ++u)
        for (Eigen::Index a = 0; a < aps; ++a)
        {
            const CVec &v = g(static_cast<std::size_t>(u), static_cast<std::size_t>(a));
            if (v.size() != n_rf)
                throw std::invalid_argument("stack: inconsistent RF dimension");
            S.block(a * n_rf, u, n_rf, 1) = v;
        }
    return S;
}

void require_full_rank(const CMat &M, const char *where)
{
    if (condition_number(M) > kMaxConditionNumber)
        throw SingularChannel(std::string(where) + ": stacked channel is rank deficient");
}
} // namespace

CMat stack_downlink(const Grid<CVec> &h_hat) { return stack(h_hat); }
CMat stack_uplink(const Grid<CVec> &g_hat) { return stack(g_hat); }

DigitalPrecoder zf_precoder(const Grid<CVec> &h_hat)
{
    const CMat H = stack(h_hat);
    if (H.rows() < H.cols())
        throw SingularChannel("zf_precoder: fewer RF dimensions than downlink users");
    require_full_rank(H, "zf_precoder");
    DigitalPrecoder p;
    p.n_rf = static_cast<int>(h_hat(0, 0).size());
    p.F = pinv(H.adjoint());
    return p;
}

DigitalCombiner zf_combiner(const Grid<CVec> &g_hat, CombinerMode mode, const std::vector<int> &serving)
{
    const CMat G = stack(g_hat);
    DigitalCombiner c;
    c.n_rf = static_cast<int>(g_hat(0, 0).size());
    c.mode = mode;
    const auto J = static_cast<Eigen::Index>(g_hat.rows());
    if (mode == CombinerMode::joint)
    {
        if (G.rows() < G.cols())
            throw SingularChannel("zf_combiner: fewer RF dimensions than uplink users");
        require_full_rank(G, "zf_combiner");
        c.V = pinv(G);
        return c;
    }
    if (serving.size() != static_cast<std::size_t>(J))
        throw std::invalid_argument("zf_combiner: per_rap mode needs one serving R-AP per user");
    c.serving = serving;
    c.V = CMat::Zero(J, G.rows());
    for (Eigen::Index j = 0; j < J; ++j)
    {
        const int z = serving[static_cast<std::size_t>(j)];
        if (z < 0 || z >= static_cast<int>(g_hat.cols()))
            throw std::invalid_argument("zf_combiner: serving R-AP index out of range");
        const CMat Gz = G.middleRows(static_cast<Eigen::Index>(z) * c.n_rf, c.n_rf);
        const CMat Pz = pinv(Gz);
        c.V.block(j, static_cast<Eigen::Index>(z) * c.n_rf, 1, c.n_rf) = Pz.row(j);
    }
    return c;
}

std::vector<int> strongest_rap(const Scenario &s)
{
    std::vector<int> out(s.beta_ul.rows(), 0);
    for (std::size_t j = 0; j < s.beta_ul.rows(); ++j)
    {
        double best = -1.0;
        for (std::size_t z = 0; z < s.beta_ul.cols(); ++z)
            if (s.beta_ul(j, z) > best)
            {
                best = s.beta_ul(j, z);
                out[j] = static_cast<int>(z);
            }
    }
    return out;
}

double tap_power(const CMat &W_rf, const CMat &F_m, const std::vector<double> &eta)
{
    if (F_m.cols() != static_cast<Eigen::Index>(eta.size()) || W_rf.cols() != F_m.rows())
        throw std::invalid_argument("tap_power: shape mismatch");
    double p = 0.0;
    for (std::size_t k = 0; k < eta.size(); ++k)
    {
        if (eta[k] < 0.0)
            throw std::invalid_argument("tap_power: negative power coefficient");
        p += eta[k] * (W_rf * F_m.col(static_cast<Eigen::Index>(k))).squaredNorm();
    }
    return p;
}

std::vector<double> tap_powers(const AnalogSet &analog, const DigitalPrecoder &precoder, const std::vector<double> &eta)
{
    std::vector<double> p(analog.W_rf.size());
    for (std::size_t m = 0; m < p.size(); ++m)
        p[m] = tap_power(analog.W_rf[m], precoder.block(static_cast<int>(m)), eta);
    return p;
}

double equal_downlink_eta(double p_d, const std::vector<CMat> &W_rf, const DigitalPrecoder &precoder)
{
    double worst = 0.0;
    for (std::size_t m = 0; m < W_rf.size(); ++m)
        worst = std::max(worst, (W_rf[m] * precoder.block(static_cast<int>(m))).squaredNorm());
    if (!(worst > 0.0))
        throw DegenerateInput("equal_downlink_eta: all precoders are zero");
    return p_d / worst;
}

std::vector<double> per_user_eta_ceiling(double p_d, const std::vector<CMat> &W_rf, const DigitalPrecoder &precoder)
{
    std::vector<double> out(static_cast<std::size_t>(precoder.F.cols()));
    for (Eigen::Index k = 0; k < precoder.F.cols(); ++k)
    {
        double worst = 0.0;
        for (std::size_t m = 0; m < W_rf.size(); ++m)
            worst = std::max(worst, (W_rf[m] * precoder.f(static_cast<int>(m), static_cast<int>(k))).squaredNorm());
        if (!(worst > 0.0))
            throw DegenerateInput("per_user_eta_ceiling: zero precoder column");
        out[static_cast<std::size_t>(k)] = p_d / worst;
    }
    return out;
}

} // namespace nafd
