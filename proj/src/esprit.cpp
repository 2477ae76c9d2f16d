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

#include "subnyq/esprit.hpp"
#include "subnyq/error.hpp"
#include "subnyq/kernels.hpp"
#include "subnyq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace subnyq::esprit
{
    void CovarianceMatrix::validate() const
    {
        if (r.rows() != r.cols())
            throw DimensionError("covariance: matrix is not square");
        const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
        if ((r - r.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
            throw DimensionError("covariance: matrix is not Hermitian");
        Eigen::SelfAdjointEigenSolver<CMat> es(r, Eigen::EigenvaluesOnly);
        const RVec &ev = es.eigenvalues();
        if (ev.size() > 0 && ev(0) < -1e-10 * std::max(ev(ev.size() - 1), 0.0) - 1e-300)
            throw DimensionError("covariance: matrix is not positive semidefinite");
    }

    CovarianceMatrix covariance(const CMat &x) { return {kernels::gram(x), x.cols(), 1}; }

    CovarianceMatrix covariance(const frontend::SampleSet &samples) { return covariance(samples.x); }

    int window_count(int n_sensors, int m) { return n_sensors - m; }

    CovarianceMatrix smooth_covariance(const CMat &x, int m)
    {
        const int n = static_cast<int>(x.rows());
        if (m < 1)
            throw ConfigError("smooth_covariance: m must be positive");
        if (n <= m + 1)
        {
            std::ostringstream msg;
            msg << "smooth_covariance: N = " << n << " sensors give fewer than two subarrays of length " << (m + 1);
            throw InsufficientSensorsError(msg.str());
        }
        const int v = window_count(n, m);
        CMat acc = CMat::Zero(m + 1, m + 1);
        for (int l = 0; l < v; ++l)
            acc += kernels::gram(x.middleRows(l, m + 1));
        return {acc / static_cast<double>(v), x.cols(), v};
    }

    CovarianceMatrix smooth_covariance(const frontend::SampleSet &samples, int m)
    {
        return smooth_covariance(samples.x, m);
    }

    std::vector<double> eigenvalues_desc(const CovarianceMatrix &r)
    {
        Eigen::SelfAdjointEigenSolver<CMat> es(r.r, Eigen::EigenvaluesOnly);
        std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
        std::reverse(ev.begin(), ev.end());
        return ev;
    }

    int mdl_order(const std::vector<double> &eigenvalues, long long q)
    {
        if (eigenvalues.empty())
            throw ConfigError("mdl_order: no eigenvalues");
        const int p = static_cast<int>(eigenvalues.size());
        std::vector<double> ev(eigenvalues);
        for (auto &e : ev)
            e = std::max(e, 0.0);
        const double top = ev.front();
        if (top <= 0.0)
            return 0;

        int rank = 0;
        for (double e : ev)
            if (e > kRankTolerance * top)
                ++rank;
        if (rank < p)
            return rank;

        const double qd = static_cast<double>(std::max<long long>(q, 1));
        int best = 0;
        double best_score = 0.0;
        for (int k = 0; k < p; ++k)
        {
            double log_geo = 0.0, arith = 0.0;
            for (int i = k; i < p; ++i)
            {
                log_geo += std::log(ev[i]);
                arith += ev[i];
            }
            const double len = static_cast<double>(p - k);
            log_geo /= len;
            arith /= len;
            const double score =
                -qd * len * (log_geo - std::log(arith)) + 0.5 * k * (2.0 * p - k) * std::log(qd);
            if (k == 0 || score < best_score)
            {
                best = k;
                best_score = score;
            }
        }
        return best;
    }

    int resolve_order(std::optional<int> known, const CovarianceMatrix &r)
    {
        if (known)
            return *known;
        return mdl_order(eigenvalues_desc(r), r.n_snapshots);
    }

    EspritResult esprit_1d_detailed(const CovarianceMatrix &r, int m, double d, double c, double theta)
    {
        EspritResult out;
        if (m == 0)
            return out;
        if (m < 0)
            throw ConfigError("esprit: negative order");
        const int n = static_cast<int>(r.r.rows());
        if (n < m + 1)
        {
            std::ostringstream msg;
            msg << "esprit: " << n << " sensors cannot resolve " << m << " carriers (need at least m + 1)";
            throw InsufficientSensorsError(msg.str());
        }
        const double cos_theta = std::cos(theta);
        if (!(std::abs(cos_theta) > 0.0) || !(d > 0.0))
            throw ConfigError("esprit: need d > 0 and theta away from +-90 degrees");

        Eigen::SelfAdjointEigenSolver<CMat> es(r.r);
        const RVec &ev = es.eigenvalues(); // ascending
        const double top = std::max(ev(n - 1), 0.0);
        int rank = 0;
        for (int i = 0; i < n; ++i)
            if (ev(i) > kRankTolerance * top && top > 0.0)
                ++rank;
        if (rank < m)
        {
            std::ostringstream msg;
            msg << "esprit: covariance rank " << rank << " is below the order " << m
                << "; use smooth_covariance for correlated or few snapshots";
            throw RankDeficientError(msg.str());
        }

        const CMat us = es.eigenvectors().rightCols(m);
        const CMat u1 = us.topRows(n - 1);
        const CMat u2 = us.bottomRows(n - 1);
        const CMat psi = linalg::pinv(u1) * u2;
        Eigen::ComplexEigenSolver<CMat> ces(psi, false);
        const CVec lambda = ces.eigenvalues();

        for (Eigen::Index i = 0; i < lambda.size(); ++i)
        {
            out.eigenvalues.push_back(lambda(i));
            out.carriers.push_back(linalg::angle(lambda(i)) * c / (2.0 * kPi * d * cos_theta));
            if (std::abs(std::abs(lambda(i)) - 1.0) > 0.5)
            {
                std::ostringstream msg;
                msg << "esprit: eigenvalue modulus " << std::abs(lambda(i)) << " far from 1 (degenerate subspace)";
                out.warnings.push_back(msg.str());
            }
        }
        std::sort(out.carriers.begin(), out.carriers.end());
        return out;
    }

    std::vector<double> esprit_1d(const CovarianceMatrix &r, int m, double d, double c, double theta)
    {
        return esprit_1d_detailed(r, m, d, c, theta).carriers;
    }
}
