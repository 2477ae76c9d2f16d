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

#include "subnyq/cascade.hpp"
#include "subnyq/error.hpp"
#include "subnyq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace subnyq::cascade
{
    std::vector<double> JointEstimate::carriers() const
    {
        std::vector<double> f;
        for (const auto &p : pairs)
            f.push_back(p.first);
        return f;
    }

    std::vector<double> JointEstimate::aoas() const
    {
        std::vector<double> th;
        for (const auto &p : pairs)
            th.push_back(p.second);
        return th;
    }

    CrossCovariances cross_covariances(const CMat &x, const CMat &z)
    {
        if (x.rows() != z.rows() || x.cols() != z.cols())
            throw DimensionError("cross_covariances: x and z shapes differ");
        const Eigen::Index n = x.rows();
        if (n < 2)
            throw InsufficientSensorsError("cross_covariances: need N >= 2 sensors per axis");
        const auto x1 = x.topRows(n - 1), x2 = x.bottomRows(n - 1);
        const auto z1 = z.topRows(n - 1), z2 = z.bottomRows(n - 1);
        return {x1 * z1.adjoint(), x2 * z1.adjoint(), x1 * z2.adjoint(), x2 * z2.adjoint()};
    }

    CrossCovariances cross_covariances(const frontend::SampleSet &samples)
    {
        if (!samples.z)
            throw DimensionError("cross_covariances: samples carry no z axis");
        return cross_covariances(samples.x, *samples.z);
    }

    CrossCovariances expected_cross_covariances(const CMat &ax, const CMat &az, const CMat &rw)
    {
        const Eigen::Index n = ax.rows();
        if (n < 2 || az.rows() != n || ax.cols() != az.cols() || rw.rows() != ax.cols() || rw.cols() != ax.cols())
            throw DimensionError("expected_cross_covariances: inconsistent shapes");
        const CMat ax1 = ax.topRows(n - 1), ax2 = ax.bottomRows(n - 1);
        const CMat az1 = az.topRows(n - 1), az2 = az.bottomRows(n - 1);
        return {ax1 * rw * az1.adjoint(), ax2 * rw * az1.adjoint(), ax1 * rw * az2.adjoint(),
                ax2 * rw * az2.adjoint()};
    }

    JointEstimate joint_esprit(const CrossCovariances &r, int m, double d, double c)
    {
        JointEstimate out;
        if (m == 0)
            return out;
        if (m < 0)
            throw ConfigError("joint_esprit: negative order");
        const Eigen::Index k = r.r1.rows();
        if (k < m)
        {
            std::ostringstream msg;
            msg << "joint_esprit: " << (k + 1) << " sensors per axis cannot resolve " << m
                << " transmissions (need N > M)";
            throw InsufficientSensorsError(msg.str());
        }

        CMat stacked(4 * k, r.r1.cols());
        stacked << r.r1, r.r2, r.r3, r.r4;
        Eigen::JacobiSVD<CMat> svd(stacked, Eigen::ComputeThinU);
        const CMat u = svd.matrixU().leftCols(m);
        const CMat u11 = u.middleRows(0, k), u12 = u.middleRows(k, k);
        const CMat u13 = u.middleRows(2 * k, k), u14 = u.middleRows(3 * k, k);

        if (linalg::numerical_rank(u11) < m)
            throw RankDeficientError("joint_esprit: leading subspace block is rank deficient");
        const CMat u11_pinv = linalg::pinv(u11);
        const CMat v1 = u11_pinv * u12;
        const CMat v2 = u11_pinv * u13;
        const CMat v3 = u11_pinv * u14;

        Eigen::ComplexEigenSolver<CMat> ces(v1 + v2 + v3);
        const CVec lambda = ces.eigenvalues();
        const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = i + 1; j < m; ++j)
                if (std::abs(lambda(i) - lambda(j)) < kPairingGap * scale)
                    throw PairingAmbiguityError("joint_esprit: repeated eigenvalue of V1 + V2 + V3, pairing is ambiguous");

        const CMat t = ces.eigenvectors();
        const Eigen::PartialPivLU<CMat> lu(t);
        out.phi = lu.solve(v1 * t);
        out.psi = lu.solve(v2 * t).adjoint();

        struct Item
        {
            double f, theta;
            cplx phi, psi;
        };
        std::vector<Item> items;
        for (Eigen::Index i = 0; i < m; ++i)
        {
            const double a_phi = linalg::angle(out.phi(i, i));
            const double a_psi = linalg::angle(out.psi(i, i));
            double theta = std::atan2(a_psi, a_phi);
            if (theta > 0.5 * kPi)
                theta -= kPi;
            else if (theta <= -0.5 * kPi)
                theta += kPi;
            const double cos_t = std::cos(theta);
            double f;
            if (std::abs(cos_t) < 1e-12)
                f = a_psi * c / (2.0 * kPi * d * std::sin(theta));
            else
                f = a_phi * c / (2.0 * kPi * d * cos_t);
            if (std::abs(cos_t) < 1e-3)
            {
                std::ostringstream msg;
                msg << "joint_esprit: |cos(theta)| = " << std::abs(cos_t) << " makes the carrier ill conditioned";
                out.warnings.push_back(msg.str());
            }
            items.push_back({f, theta, out.phi(i, i), out.psi(i, i)});
        }
        std::sort(items.begin(), items.end(), [](const Item &a, const Item &b) { return a.f < b.f; });
        for (const auto &it : items)
        {
            out.pairs.emplace_back(it.f, it.theta);
            out.phi_diag.push_back(it.phi);
            out.psi_diag.push_back(it.psi);
        }
        return out;
    }
}
