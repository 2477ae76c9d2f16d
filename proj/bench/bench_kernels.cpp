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

// Serial reference vs OpenMP kernels on shapes taken from the sweeps.

#include "subnyq/frontend.hpp"
#include "subnyq/harness.hpp"
#include "subnyq/kernels.hpp"
#include "subnyq/sparse.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace subnyq;

namespace
{
    CMat random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed)
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

    const sparse::Dictionary &joint_dict()
    {
        static const sparse::Dictionary d = sparse::build_grid_joint(6, 10e9 / 64.0, 10e9, 0.029, kSpeedOfLight);
        return d;
    }
}

static void BM_GramSerial(benchmark::State &st)
{
    const CMat x = random_matrix(st.range(0), 400, 1);
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::serial::gram(x));
}

static void BM_GramParallel(benchmark::State &st)
{
    const CMat x = random_matrix(st.range(0), 400, 1);
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::parallel::gram(x));
}

static void BM_AtomScoresSerial(benchmark::State &st)
{
    const CMat kr = sparse::krao_dictionary(joint_dict());
    const CMat r = random_matrix(kr.rows(), 1, 2);
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::serial::atom_scores(kr, r));
}

static void BM_AtomScoresParallel(benchmark::State &st)
{
    const CMat kr = sparse::krao_dictionary(joint_dict());
    const CMat r = random_matrix(kr.rows(), 1, 2);
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::parallel::atom_scores(kr, r));
}

static void BM_KhatriRaoSerial(benchmark::State &st)
{
    const CMat &g = joint_dict().g;
    const CMat gc = g.conjugate();
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::serial::khatri_rao(gc, g));
}

static void BM_KhatriRaoParallel(benchmark::State &st)
{
    const CMat &g = joint_dict().g;
    const CMat gc = g.conjugate();
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::parallel::khatri_rao(gc, g));
}

static void BM_TrialLoop(benchmark::State &st)
{
    harness::ExperimentConfig c;
    c.sweep_variable = harness::SweepVariable::SnrDb;
    c.sweep_values = {10.0};
    c.algorithms = {harness::Algorithm::Esprit};
    c.trials = 16;
    for (auto _ : st)
        benchmark::DoNotOptimize(st.range(0) == 0 ? harness::run_serial(c) : harness::run(c));
}

BENCHMARK(BM_GramSerial)->Arg(10)->Arg(40);
BENCHMARK(BM_GramParallel)->Arg(10)->Arg(40);
BENCHMARK(BM_AtomScoresSerial);
BENCHMARK(BM_AtomScoresParallel);
BENCHMARK(BM_KhatriRaoSerial);
BENCHMARK(BM_KhatriRaoParallel);
BENCHMARK(BM_TrialLoop)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
