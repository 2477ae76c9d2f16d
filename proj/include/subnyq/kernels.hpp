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

#ifndef SUBNYQ_KERNELS_HPP
#define SUBNYQ_KERNELS_HPP

#include "subnyq/types.hpp"

namespace subnyq::kernels
{
    // Hot loops in two flavours. The serial versions are the reference; the
    // OpenMP versions split the same per-element work across threads and
    // produce bit-identical results.
    namespace serial
    {
        // X X^H.
        CMat gram(const CMat &x);

        // score(l) = sum_c |d_l^H r_c|^2 / |d_l|^2 for every column d_l of dict.
        RVec atom_scores(const CMat &dict, const CMat &residual);

        // Column-wise Kronecker product.
        CMat khatri_rao(const CMat &a, const CMat &b);
    }

    namespace parallel
    {
        CMat gram(const CMat &x);
        RVec atom_scores(const CMat &dict, const CMat &residual);
        CMat khatri_rao(const CMat &a, const CMat &b);
    }

    // Dispatch: parallel when called outside an active parallel region, serial otherwise.
    CMat gram(const CMat &x);
    RVec atom_scores(const CMat &dict, const CMat &residual);
    CMat khatri_rao(const CMat &a, const CMat &b);
}

#endif
