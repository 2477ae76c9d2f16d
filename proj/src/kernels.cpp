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

#include "subnyq/kernels.hpp"
#include "subnyq/error.hpp"

#include <omp.h>

namespace subnyq::kernels
{
    namespace
    {
        cplx gram_entry(const CMat &x, Eigen::Index i, Eigen::Index j)
        {
            cplx s{0.0, 0.0};
            for (Eigen::Index k = 0; k < x.cols(); ++k)
                s += x(i, k) * std::conj(x(j, k));
            return s;
        }

        double atom_score(const CMat &dict, const CMat &residual, Eigen::Index l)
        {
            const double norm2 = dict.col(l).squaredNorm();
            if (norm2 == 0.0)
                return 0.0;
            double s = 0.0;
            for (Eigen::Index c = 0; c < residual.cols(); ++c)
            {
                cplx dot{0.0, 0.0};
                for (Eigen::Index r = 0; r < dict.rows(); ++r)
                    dot += std::conj(dict(r, l)) * residual(r, c);
                s += std::norm(dot);
            }
            return s / norm2;
        }

        void khatri_rao_column(const CMat &a, const CMat &b, CMat &out, Eigen::Index l)
        {
            for (Eigen::Index i = 0; i < a.rows(); ++i)
                for (Eigen::Index k = 0; k < b.rows(); ++k)
                    out(i * b.rows() + k, l) = a(i, l) * b(k, l);
        }

        void check_kr(const CMat &a, const CMat &b)
        {
            if (a.cols() != b.cols())
                throw DimensionError("khatri_rao: column counts differ");
        }

        void check_scores(const CMat &dict, const CMat &residual)
        {
            if (dict.rows() != residual.rows())
                throw DimensionError("atom_scores: dictionary and residual row counts differ");
        }
    }

    namespace serial
    {
        CMat gram(const CMat &x)
        {
            const Eigen::Index n = x.rows();
            CMat g(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = i; j < n; ++j)
                {
                    g(i, j) = gram_entry(x, i, j);
                    g(j, i) = std::conj(g(i, j));
                }
            for (Eigen::Index i = 0; i < n; ++i)
                g(i, i) = {g(i, i).real(), 0.0};
            return g;
        }

        RVec atom_scores(const CMat &dict, const CMat &residual)
        {
            check_scores(dict, residual);
            RVec s(dict.cols());
            for (Eigen::Index l = 0; l < dict.cols(); ++l)
                s(l) = atom_score(dict, residual, l);
            return s;
        }

        CMat khatri_rao(const CMat &a, const CMat &b)
        {
            check_kr(a, b);
            CMat out(a.rows() * b.rows(), a.cols());
            for (Eigen::Index l = 0; l < a.cols(); ++l)
                khatri_rao_column(a, b, out, l);
            return out;
        }
    }

    namespace parallel
    {
        CMat gram(const CMat &x)
        {
            const Eigen::Index n = x.rows();
            CMat g(n, n);
            const long long pairs = static_cast<long long>(n) * n;
#pragma omp parallel for schedule(static)
            for (long long p = 0; p < pairs; ++p)
            {
                const Eigen::Index i = p / n;
                const Eigen::Index j = p % n;
                if (j < i)
                    continue;
                const cplx v = gram_entry(x, i, j);
                g(i, j) = i == j ? cplx{v.real(), 0.0} : v;
                g(j, i) = i == j ? cplx{v.real(), 0.0} : std::conj(v);
            }
            return g;
        }

        RVec atom_scores(const CMat &dict, const CMat &residual)
        {
            check_scores(dict, residual);
            RVec s(dict.cols());
            const long long cols = dict.cols();
#pragma omp parallel for schedule(static)
            for (long long l = 0; l < cols; ++l)
                s(l) = atom_score(dict, residual, l);
            return s;
        }

        CMat khatri_rao(const CMat &a, const CMat &b)
        {
            check_kr(a, b);
            CMat out(a.rows() * b.rows(), a.cols());
            const long long cols = a.cols();
#pragma omp parallel for schedule(static)
            for (long long l = 0; l < cols; ++l)
                khatri_rao_column(a, b, out, l);
            return out;
        }
    }

    CMat gram(const CMat &x) { return omp_in_parallel() ? serial::gram(x) : parallel::gram(x); }

    RVec atom_scores(const CMat &dict, const CMat &residual)
    {
        return omp_in_parallel() ? serial::atom_scores(dict, residual) : parallel::atom_scores(dict, residual);
    }

    CMat khatri_rao(const CMat &a, const CMat &b)
    {
        return omp_in_parallel() ? serial::khatri_rao(a, b) : parallel::khatri_rao(a, b);
    }
}
