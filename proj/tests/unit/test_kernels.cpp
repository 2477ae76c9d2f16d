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

#include "../oracles.hpp"
#include "subnyq/error.hpp"
#include "subnyq/kernels.hpp"

#include <doctest.h>

#include <omp.h>

using namespace subnyq;

TEST_CASE("gram: serial and parallel agree bit for bit and match X X^H")
{
    omp_set_num_threads(4);
    const CMat x = oracle::random_matrix(9, 57, 1);
    const CMat s = kernels::serial::gram(x);
    const CMat p = kernels::parallel::gram(x);
    CHECK((s - p).norm() == 0.0);
    CHECK((s - x * x.adjoint()).norm() < 1e-12 * s.norm());
    CHECK((kernels::gram(x) - s).norm() == 0.0);
    CHECK((s - s.adjoint()).norm() == 0.0);
}

TEST_CASE("atom_scores: serial and parallel agree and match |d^H R|^2 / |d|^2")
{
    const CMat dict = oracle::random_matrix(8, 40, 2);
    const CMat res = oracle::random_matrix(8, 3, 3);
    const RVec s = kernels::serial::atom_scores(dict, res);
    const RVec p = kernels::parallel::atom_scores(dict, res);
    REQUIRE(s.size() == 40);
    CHECK((s - p).norm() == 0.0);
    for (int l = 0; l < 40; ++l)
    {
        const double ref = (dict.col(l).adjoint() * res).squaredNorm() / dict.col(l).squaredNorm();
        CHECK(s(l) == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK_THROWS_AS(kernels::atom_scores(dict, oracle::random_matrix(7, 1, 4)), DimensionError);
}

TEST_CASE("khatri_rao: columns are Kronecker products, serial equals parallel")
{
    const CMat a = oracle::random_matrix(3, 5, 5);
    const CMat b = oracle::random_matrix(4, 5, 6);
    const CMat s = kernels::serial::khatri_rao(a, b);
    CHECK((s - kernels::parallel::khatri_rao(a, b)).norm() == 0.0);
    REQUIRE(s.rows() == 12);
    for (int l = 0; l < 5; ++l)
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 4; ++k)
                CHECK(s(i * 4 + k, l) == a(i, l) * b(k, l));
    CHECK_THROWS_AS(kernels::khatri_rao(a, oracle::random_matrix(4, 2, 1)), DimensionError);
}

TEST_CASE("kernels handle empty inputs")
{
    CHECK(kernels::gram(CMat(3, 0)).norm() == 0.0);
    CHECK(kernels::atom_scores(CMat(4, 0), CMat(4, 2)).size() == 0);
}
