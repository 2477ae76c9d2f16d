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

#include "subnyq/sparse.hpp"
#include "subnyq/error.hpp"
#include "subnyq/kernels.hpp"
#include "subnyq/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace subnyq::sparse
{
    Dictionary build_grid_1d(int n, double delta, double f_nyq, double d, double c, double theta)
    {
        if (!(delta > 0.0))
            throw ConfigError("build_grid_1d: delta must be positive");
        const int l_max = static_cast<int>(std::floor(f_nyq / (2.0 * delta) + 1e-9));
        Dictionary dict;
        dict.grid_delta = delta;
        dict.g.resize(n, 2 * l_max + 1);
        for (int l = -l_max; l <= l_max; ++l)
        {
            const double f = l * delta;
            for (int r = 0; r < n; ++r)
                dict.g(r, l + l_max) = std::polar(1.0, 2.0 * kPi * f * frontend::delay(r, d, theta, c, frontend::Axis::X));
            dict.atoms.push_back({f, 0.0, l, 0});
        }
        return dict;
    }

    Dictionary build_grid_joint(int n_per_axis, double delta, double f_nyq, double d, double c)
    {
        if (!(delta > 0.0))
            throw ConfigError("build_grid_joint: delta must be positive");
        if (n_per_axis < 2)
            throw ConfigError("build_grid_joint: need N >= 2");
        const int l_max = static_cast<int>(std::floor(f_nyq / (2.0 * delta) + 1e-9));
        const double radius2 = 0.25 * f_nyq * f_nyq;
        Dictionary dict;
        dict.grid_delta = delta;
        dict.joint = true;
        for (int l1 = -l_max; l1 <= l_max; ++l1)
            for (int l2 = -l_max; l2 <= l_max; ++l2)
            {
                const double a = l1 * delta, b = l2 * delta;
                if (a * a + b * b > radius2 * (1.0 + 1e-12))
                    continue;
                dict.atoms.push_back({a, b, l1, l2});
            }
        const int rows = 2 * n_per_axis - 1;
        dict.g.resize(rows, static_cast<Eigen::Index>(dict.atoms.size()));
        for (std::size_t k = 0; k < dict.atoms.size(); ++k)
        {
            const auto &at = dict.atoms[k];
            const auto col = static_cast<Eigen::Index>(k);
            for (int r = 0; r < n_per_axis; ++r)
                dict.g(r, col) = std::polar(1.0, 2.0 * kPi * r * d * at.alpha / c);
            for (int r = 1; r < n_per_axis; ++r)
                dict.g(n_per_axis + r - 1, col) = std::polar(1.0, 2.0 * kPi * r * d * at.beta / c);
        }
        return dict;
    }

    CMat ctf_frame(const esprit::CovarianceMatrix &r)
    {
        const Eigen::Index n = r.r.rows();
        if (n == 0)
            return CMat(0, 0);
        Eigen::SelfAdjointEigenSolver<CMat> es(r.r);
        const RVec &ev = es.eigenvalues();
        const double top = ev(n - 1);
        if (!(top > 0.0))
            return CMat(n, 0);
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = n - 1; i >= 0; --i)
            if (ev(i) > kRankTolerance * top)
                keep.push_back(i);
        CMat v(n, static_cast<Eigen::Index>(keep.size()));
        for (std::size_t k = 0; k < keep.size(); ++k)
            v.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]) * std::sqrt(ev(keep[k]));
        return v;
    }

    namespace
    {
        // Greedy MMV pursuit shared by every OMP flavour.
        SupportEstimate pursue(const CMat &v, const CMat &dict, int max_atoms, double stop_norm)
        {
            if (v.rows() != dict.rows())
                throw DimensionError("pursuit: measurement and dictionary row counts differ");
            if (max_atoms < 0)
                throw ConfigError("pursuit: negative atom count");
            if (max_atoms > dict.cols())
                throw ConfigError("pursuit: more atoms requested than the dictionary holds");

            SupportEstimate out;
            CMat residual = v;
            double res_norm = v.norm();
            std::vector<int> picked;
            std::vector<char> used(dict.cols(), 0);
            while (static_cast<int>(picked.size()) < max_atoms && res_norm > stop_norm)
            {
                const RVec scores = kernels::atom_scores(dict, residual);
                int best = -1;
                for (Eigen::Index l = 0; l < scores.size(); ++l)
                    if (!used[l] && (best < 0 || scores(l) > scores(best)))
                        best = static_cast<int>(l);
                if (best < 0)
                    break;
                used[best] = 1;
                picked.push_back(best);

                CMat gs(dict.rows(), static_cast<Eigen::Index>(picked.size()));
                for (std::size_t k = 0; k < picked.size(); ++k)
                    gs.col(static_cast<Eigen::Index>(k)) = dict.col(picked[k]);
                residual = v - gs * (linalg::pinv(gs) * v);
                res_norm = residual.norm();
            }
            std::sort(picked.begin(), picked.end());
            out.indices = std::move(picked);
            out.residual_norm = res_norm;
            return out;
        }
    }

    SupportEstimate somp(const CMat &v, const CMat &dict, int m) { return pursue(v, dict, m, -1.0); }

    SupportEstimate somp_until(const CMat &v, const CMat &dict, double rel_tol)
    {
        const int cap = static_cast<int>(std::min(dict.rows(), dict.cols()));
        return pursue(v, dict, cap, rel_tol * v.norm());
    }

    SupportEstimate omp(const CVec &y, const CMat &dict, int m) { return pursue(CMat(y), dict, m, -1.0); }

    SupportEstimate omp_until(const CVec &y, const CMat &dict, double rel_tol)
    {
        const int cap = static_cast<int>(std::min(dict.rows(), dict.cols()));
        return pursue(CMat(y), dict, cap, rel_tol * y.norm());
    }

    CVec vec(const CMat &r) { return Eigen::Map<const CVec>(r.data(), r.size()); }

    CMat krao_dictionary(const Dictionary &joint) { return kernels::khatri_rao(joint.g.conjugate(), joint.g); }

    KraoSystem krao_model(const esprit::CovarianceMatrix &r, const Dictionary &joint)
    {
        if (r.r.rows() != joint.g.rows() || r.r.cols() != joint.g.rows())
            throw DimensionError("krao_model: covariance size differs from the dictionary row count");
        return {vec(r.r), krao_dictionary(joint)};
    }

    CMat lshape_stack(const frontend::SampleSet &samples)
    {
        if (!samples.z)
            throw DimensionError("lshape_stack: samples carry no z axis");
        const Eigen::Index n = samples.x.rows();
        CMat v(2 * n - 1, samples.x.cols());
        v.topRows(n) = samples.x;
        v.bottomRows(n - 1) = samples.z->bottomRows(n - 1);
        return v;
    }

    esprit::CovarianceMatrix joint_covariance(const frontend::SampleSet &samples)
    {
        return esprit::covariance(lshape_stack(samples));
    }

    std::pair<double, double> atom_to_carrier_aoa(double alpha, double beta)
    {
        const double f = std::hypot(alpha, beta);
        if (f == 0.0)
            return {0.0, 0.0};
        double theta = std::atan2(beta, alpha);
        double sign = 1.0;
        if (theta > 0.5 * kPi)
        {
            theta -= kPi;
            sign = -1.0;
        }
        else if (theta <= -0.5 * kPi)
        {
            theta += kPi;
            sign = -1.0;
        }
        return {sign * f, theta};
    }

    std::vector<double> support_carriers(const Dictionary &dict, const SupportEstimate &support)
    {
        std::vector<double> f;
        for (int i : support.indices)
            f.push_back(dict.atoms.at(i).alpha);
        std::sort(f.begin(), f.end());
        return f;
    }
}
