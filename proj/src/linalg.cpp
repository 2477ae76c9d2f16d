// SPDX-License-Identifier: Apache-2.0
//
// subnyq - sub-Nyquist carrier and DOA estimation toolkit
// Copyright (C) 2026 The subnyq authors
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

#include "subnyq/linalg.hpp"
#include "subnyq/error.hpp"

#include <cmath>
#include <limits>

namespace subnyq::linalg
{
    CMat pinv(const CMat &a, double rel_tol)
    {
        if (a.size() == 0)
            return CMat(a.cols(), a.rows());
        Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const RVec &s = svd.singularValues();
        const double cutoff = s.size() > 0 ? rel_tol * s(0) : 0.0;
        RVec s_inv = RVec::Zero(s.size());
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > cutoff && s(i) > 0.0)
                s_inv(i) = 1.0 / s(i);
        return svd.matrixV() * s_inv.asDiagonal() * svd.matrixU().adjoint();
    }

    RVec singular_values(const CMat &a)
    {
        if (a.size() == 0)
            return RVec();
        Eigen::JacobiSVD<CMat> svd(a);
        return svd.singularValues();
    }

    int numerical_rank(const CMat &a, double rel_tol)
    {
        const RVec s = singular_values(a);
        if (s.size() == 0 || s(0) == 0.0)
            return 0;
        int rank = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > rel_tol * s(0))
                ++rank;
        return rank;
    }

    double wrap_phase(double phi)
    {
        double w = std::remainder(phi, 2.0 * kPi); // [-pi, pi]
        if (w <= -kPi)
            w += 2.0 * kPi;
        return w;
    }

    double angle(cplx z)
    {
        // std::arg returns [-pi, pi]; -pi only for a negative real with -0 imaginary part.
        return wrap_phase(std::arg(z));
    }

    std::vector<int> min_cost_assignment(const RMat &cost)
    {
        const int n = static_cast<int>(cost.rows());
        const int m = static_cast<int>(cost.cols());
        if (n == 0)
            return {};
        if (n > m)
            throw DimensionError("min_cost_assignment: more rows than columns");

        // Potentials formulation, 1-based bookkeeping with a dummy column 0.
        constexpr double inf = std::numeric_limits<double>::infinity();
        std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
        std::vector<int> p(m + 1, 0), way(m + 1, 0);
        for (int i = 1; i <= n; ++i)
        {
            p[0] = i;
            int j0 = 0;
            std::vector<double> minv(m + 1, inf);
            std::vector<char> used(m + 1, 0);
            do
            {
                used[j0] = 1;
                const int i0 = p[j0];
                double delta = inf;
                int j1 = 0;
                for (int j = 1; j <= m; ++j)
                {
                    if (used[j])
                        continue;
                    const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                    if (cur < minv[j])
                    {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if (minv[j] < delta)
                    {
                        delta = minv[j];
                        j1 = j;
                    }
                }
                for (int j = 0; j <= m; ++j)
                {
                    if (used[j])
                    {
                        u[p[j]] += delta;
                        v[j] -= delta;
                    }
                    else
                        minv[j] -= delta;
                }
                j0 = j1;
            } while (p[j0] != 0);
            do
            {
                const int j1 = way[j0];
                p[j0] = p[j1];
                j0 = j1;
            } while (j0 != 0);
        }

        std::vector<int> assignment(n, -1);
        for (int j = 1; j <= m; ++j)
            if (p[j] != 0)
                assignment[p[j] - 1] = j - 1;
        return assignment;
    }

    std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b)
    {
        return splitmix64(splitmix64(splitmix64(base) ^ a) ^ (b * 0xD6E8FEB86659FD93ULL));
    }
}
