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

#ifndef SUBNYQ_ESPRIT_HPP
#define SUBNYQ_ESPRIT_HPP

#include "subnyq/frontend.hpp"

#include <optional>
#include <string>
#include <vector>

namespace subnyq::esprit
{
    struct CovarianceMatrix
    {
        CMat r;
        long long n_snapshots = 0;
        int windows = 1; // subarrays averaged (1 without smoothing)

        // Hermitian to 1e-12 and PSD down to -1e-10 * lambda_max.
        void validate() const;
    };

    // R = sum_k x[k] x[k]^H over the columns of x (no 1/Q factor).
    CovarianceMatrix covariance(const CMat &x);
    CovarianceMatrix covariance(const frontend::SampleSet &samples);

    // Forward spatial smoothing: average of the covariances of the N - m
    // overlapping subarrays of length m + 1.
    CovarianceMatrix smooth_covariance(const CMat &x, int m);
    CovarianceMatrix smooth_covariance(const frontend::SampleSet &samples, int m);

    // Number of subarrays used by smooth_covariance.
    int window_count(int n_sensors, int m);

    // Minimum description length order estimate from eigenvalues sorted in
    // descending order. Inputs with numerically zero trailing eigenvalues
    // return the numerical rank directly.
    int mdl_order(const std::vector<double> &eigenvalues, long long q);

    // The known order when given, otherwise the MDL estimate for r.
    int resolve_order(std::optional<int> known, const CovarianceMatrix &r);

    // Eigenvalues of r in descending order.
    std::vector<double> eigenvalues_desc(const CovarianceMatrix &r);

    struct EspritResult
    {
        std::vector<double> carriers; // ascending
        std::vector<cplx> eigenvalues;
        std::vector<std::string> warnings;
    };

    // Shift-invariance estimate of m carriers from a ULA covariance:
    // f = angle(lambda) c / (2 pi d cos(theta)) for each eigenvalue lambda
    // of U1^+ U2, with U1, U2 the first and last rows of the signal subspace.
    EspritResult esprit_1d_detailed(const CovarianceMatrix &r, int m, double d, double c, double theta);
    std::vector<double> esprit_1d(const CovarianceMatrix &r, int m, double d, double c, double theta);
}

#endif
