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

#include <algorithm>
#include <array>
#include <functional>

#include "nafd/types.hpp"

namespace nafd::testing
{

struct SimplexSearch
{
    double lattice_best = 0.0; // best of the C(N + 3, 3) lattice points
    double refined_best = 0.0; // after zooming around the lattice optimum
    RVec refined_x;
    int lattice_points = 0;
};

/// Grid search of f over {x in R^4 : x >= 0, sum x = budget}. The first stage
/// scans the uniform lattice with step budget / N; each later stage scans an
/// 11^3 box around the incumbent with half the previous width.
inline SimplexSearch simplex_grid_search(const std::function<double(const RVec &)> &f, double budget, int N = 16,
                                         int levels = 40)
{
    SimplexSearch out;
    out.lattice_best = 1e300;
    std::array<double, 3> best{};
    RVec x(4);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; i + j <= N; ++j)
            for (int k = 0; i + j + k <= N; ++k)
            {
                x << i, j, k, N - i - j - k;
                x *= budget / N;
                const double v = f(x);
                ++out.lattice_points;
                if (v < out.lattice_best)
                {
                    out.lattice_best = v;
                    best = {x(0), x(1), x(2)};
                }
            }
    out.refined_best = out.lattice_best;
    double h = budget / N;
    for (int level = 0; level < levels; ++level)
    {
        const std::array<double, 3> centre = best;
        for (int a = 0; a <= 10; ++a)
            for (int b = 0; b <= 10; ++b)
                for (int c = 0; c <= 10; ++c)
                {
                    const double x0 = std::max(0.0, centre[0] + h * (a / 5.0 - 1.0));
                    const double x1 = std::max(0.0, centre[1] + h * (b / 5.0 - 1.0));
                    const double x2 = std::max(0.0, centre[2] + h * (c / 5.0 - 1.0));
                    const double x3 = budget - x0 - x1 - x2;
                    if (x3 < 0.0)
                        continue;
                    x << x0, x1, x2, x3;
                    const double v = f(x);
                    if (v < out.refined_best)
                    {
                        out.refined_best = v;
                        best = {x0, x1, x2};
                    }
                }
        h *= 0.5;
    }
    out.refined_x.resize(4);
    out.refined_x << best[0], best[1], best[2], budget - best[0] - best[1] - best[2];
    return out;
}

} // namespace nafd::testing
