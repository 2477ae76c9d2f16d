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

#include "subnyq/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <memory>
#include <mutex>

namespace subnyq::fft
{
    namespace
    {
        // FFTW planning and destruction are not thread-safe; execution is.
        std::mutex &planner_mutex()
        {
            static std::mutex m;
            return m;
        }

        struct FftwFree
        {
            void operator()(fftw_complex *p) const { fftw_free(p); }
        };

        CVec transform(const CVec &x, int sign)
        {
            const int n = static_cast<int>(x.size());
            if (n == 0)
                return CVec();
            std::unique_ptr<fftw_complex, FftwFree> in(fftw_alloc_complex(n));
            std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(n));
            fftw_plan plan;
            {
                std::lock_guard<std::mutex> lock(planner_mutex());
                plan = fftw_plan_dft_1d(n, in.get(), out.get(), sign, FFTW_ESTIMATE);
            }
            std::memcpy(in.get(), x.data(), sizeof(fftw_complex) * n);
            fftw_execute(plan);
            CVec y(n);
            std::memcpy(static_cast<void *>(y.data()), out.get(), sizeof(fftw_complex) * n);
            {
                std::lock_guard<std::mutex> lock(planner_mutex());
                fftw_destroy_plan(plan);
            }
            return y;
        }
    }

    CVec forward(const CVec &x) { return transform(x, FFTW_FORWARD); }
    CVec backward(const CVec &x) { return transform(x, FFTW_BACKWARD); }
}
