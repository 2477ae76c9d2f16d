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

#ifndef SUBNYQ_TEST_ORACLES_HPP
#define SUBNYQ_TEST_ORACLES_HPP

// Reference computations that share no code with the library: direct
// sums, quadrature, exhaustive search and closed-form determinants.

#include "subnyq/types.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace oracle
{
    using subnyq::cplx;
    using subnyq::CMat;
    using subnyq::CVec;
    using subnyq::RMat;
    constexpr double kPi = 3.14159265358979323846;

    // X[k] = sum_n x[n] exp(sign j 2 pi k n / N).
    inline CVec dft(const CVec &x, int sign)
    {
        const Eigen::Index n = x.size();
        CVec out(n);
        for (Eigen::Index k = 0; k < n; ++k)
        {
            cplx acc = 0.0;
            for (Eigen::Index t = 0; t < n; ++t)
                acc += x(t) * std::polar(1.0, sign * 2.0 * kPi * static_cast<double>((k * t) % n) / n);
            out(k) = acc;
        }
        return out;
    }

    // (1/T) int_0^T p(t) exp(-j 2 pi l t / T) dt of a +-1 chip waveform,
    // composite Simpson on every chip (the integrand is smooth inside a chip).
    inline cplx chip_coeff_quadrature(const std::vector<int> &chips, long long l, int panels = 1024)
    {
        const int k = static_cast<int>(chips.size());
        cplx total = 0.0;
        for (int c = 0; c < k; ++c)
        {
            const double a = static_cast<double>(c) / k;
            const double h = 1.0 / (static_cast<double>(k) * panels);
            cplx acc = 0.0;
            for (int i = 0; i <= panels; ++i)
            {
                const double t = a + i * h;
                const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
                acc += w * std::polar(1.0, -2.0 * kPi * static_cast<double>(l) * t);
            }
            total += static_cast<double>(chips[c]) * acc * h / 3.0;
        }
        return total;
    }

    // Rank by column-pivoted QR (the library uses the SVD).
    inline int rank(const CMat &a, double rel_tol = 1e-8)
    {
        Eigen::ColPivHouseholderQR<CMat> qr(a);
        qr.setThreshold(rel_tol);
        return static_cast<int>(qr.rank());
    }

    // exp(j 2 pi f d n g(theta) / c) evaluated term by term.
    inline cplx steering_entry(double f, double theta, int n, double d, double c, bool z_axis)
    {
        const double g = z_axis ? std::sin(theta) : std::cos(theta);
        return std::exp(cplx(0.0, 2.0 * kPi * f * d * n * g / c));
    }

    inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int> &)> &fn)
    {
        std::vector<int> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        if (k > n)
            return;
        while (true)
        {
            fn(idx);
            int i = k - 1;
            while (i >= 0 && idx[i] == n - k + i)
                --i;
            if (i < 0)
                return;
            ++idx[i];
            for (int j = i + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }

    inline CMat columns(const CMat &a, const std::vector<int> &idx)
    {
        CMat out(a.rows(), static_cast<Eigen::Index>(idx.size()));
        for (std::size_t i = 0; i < idx.size(); ++i)
            out.col(i) = a.col(idx[i]);
        return out;
    }

    // Exhaustive l0 search: the k-column support with the smallest least-squares residual for Y.
    inline std::vector<int> best_support(const CMat &y, const CMat &dict, int k, double *residual = nullptr)
    {
        std::vector<int> best;
        double best_res = std::numeric_limits<double>::infinity();
        for_each_subset(static_cast<int>(dict.cols()), k, [&](const std::vector<int> &idx) {
            const CMat sub = columns(dict, idx);
            const CMat coef = sub.colPivHouseholderQr().solve(y);
            const double res = (y - sub * coef).norm();
            if (res < best_res - 1e-12)
            {
                best_res = res;
                best = idx;
            }
        });
        if (residual)
            *residual = best_res;
        return best;
    }

    // Smallest number of linearly dependent columns (cols + 1 when none are).
    inline int spark(const CMat &a, double rel_tol = 1e-9)
    {
        const int n = static_cast<int>(a.cols());
        for (int k = 1; k <= n; ++k)
        {
            bool dependent = false;
            for_each_subset(n, k, [&](const std::vector<int> &idx) {
                if (!dependent && rank(columns(a, idx), rel_tol) < k)
                    dependent = true;
            });
            if (dependent)
                return k;
        }
        return n + 1;
    }

    // Minimal-cost assignment of rows to distinct columns by enumerating permutations.
    inline double best_assignment_cost(const RMat &cost)
    {
        std::vector<int> perm(cost.cols());
        std::iota(perm.begin(), perm.end(), 0);
        double best = std::numeric_limits<double>::infinity();
        do
        {
            double s = 0.0;
            for (Eigen::Index r = 0; r < cost.rows(); ++r)
                s += cost(r, perm[r]);
            best = std::min(best, s);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }

    // Vandermonde determinant prod_{i<j} (z_j - z_i).
    inline cplx vandermonde_det(const std::vector<cplx> &z)
    {
        cplx det = 1.0;
        for (std::size_t i = 0; i < z.size(); ++i)
            for (std::size_t j = i + 1; j < z.size(); ++j)
                det *= z[j] - z[i];
        return det;
    }

    inline CMat random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed)
    {
        std::mt19937 rng(seed);
        std::normal_distribution<double> g;
        CMat a(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i)
            {
                const double re = g(rng);
                a(i, j) = cplx(re, g(rng));
            }
        return a;
    }
}

#endif
