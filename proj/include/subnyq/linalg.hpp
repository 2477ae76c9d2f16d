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

#ifndef SUBNYQ_LINALG_HPP
#define SUBNYQ_LINALG_HPP

#include "subnyq/types.hpp"

#include <cstdint>
#include <vector>

namespace subnyq::linalg
{
    // Moore-Penrose pseudo-inverse through the SVD. Singular values below
    // rel_tol * sigma_max are dropped.
    CMat pinv(const CMat &a, double rel_tol = kRankTolerance);

    // Number of singular values above rel_tol * sigma_max (0 for a zero matrix).
    int numerical_rank(const CMat &a, double rel_tol = kRankTolerance);

    RVec singular_values(const CMat &a);

    // Angle of z reduced to (-pi, pi].
    double angle(cplx z);

    // Wraps any phase into (-pi, pi].
    double wrap_phase(double phi);

    // Minimal-cost assignment of rows to columns (Hungarian method).
    // Requires rows <= cols; returns the column assigned to each row.
    std::vector<int> min_cost_assignment(const RMat &cost);

    // Stateless 64-bit mixer used to derive child seeds.
    std::uint64_t splitmix64(std::uint64_t x);
    std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);
}

#endif
