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

#ifndef SUBNYQ_FFT_HPP
#define SUBNYQ_FFT_HPP

#include "subnyq/types.hpp"

namespace subnyq::fft
{
    // Unnormalized transforms in natural FFT bin order:
    //   forward:  X[k] = sum_n x[n] exp(-j 2 pi k n / N)
    //   backward: x[n] = sum_k X[k] exp(+j 2 pi k n / N)
    // Safe to call from several threads.
    CVec forward(const CVec &x);
    CVec backward(const CVec &x);

    // Bin j of a length-n transform maps to FFT index (j mod n).
    inline Eigen::Index bin_index(long long j, Eigen::Index n)
    {
        long long r = j % static_cast<long long>(n);
        return static_cast<Eigen::Index>(r < 0 ? r + n : r);
    }

    // Signed bin of FFT index k in the half-open band [-(n/2), n - n/2).
    inline long long signed_bin(Eigen::Index k, Eigen::Index n)
    {
        const long long hi = static_cast<long long>(n) - static_cast<long long>(n) / 2;
        return k < hi ? static_cast<long long>(k) : static_cast<long long>(k) - n;
    }
}

#endif
