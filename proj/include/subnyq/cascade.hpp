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

#ifndef SUBNYQ_CASCADE_HPP
#define SUBNYQ_CASCADE_HPP

#include "subnyq/frontend.hpp"

#include <string>
#include <utility>
#include <vector>

namespace subnyq::cascade
{
    // x1/x2 are the first/last N-1 rows of x, likewise z1/z2:
    //   r1 = sum x1 z1^H, r2 = sum x2 z1^H, r3 = sum x1 z2^H, r4 = sum x2 z2^H.
    struct CrossCovariances
    {
        CMat r1, r2, r3, r4;
    };

    CrossCovariances cross_covariances(const CMat &x, const CMat &z);
    CrossCovariances cross_covariances(const frontend::SampleSet &samples);

    // Statistical counterparts for steering matrices ax, az (N x M) and source covariance rw.
    CrossCovariances expected_cross_covariances(const CMat &ax, const CMat &az, const CMat &rw);

    struct JointEstimate
    {
        std::vector<std::pair<double, double>> pairs; // (carrier_hz, aoa_rad), ascending carrier
        std::vector<cplx> phi_diag;                   // same order as pairs
        std::vector<cplx> psi_diag;
        CMat phi; // full recovered matrices, eigenvector order
        CMat psi;
        std::vector<std::string> warnings;

        std::vector<double> carriers() const;
        std::vector<double> aoas() const;
    };

    // Paired carrier/AOA estimate from the four cross-covariances. The
    // eigenvectors T of V1 + V2 + V3 diagonalize both V1 and V2, so the
    // diagonals of T^-1 V1 T and (T^-1 V2 T)^H pair up position by position.
    JointEstimate joint_esprit(const CrossCovariances &r, int m, double d, double c);

    // Minimal eigenvalue gap of V1 + V2 + V3 below which pairing is ambiguous.
    inline constexpr double kPairingGap = 1e-8;
}

#endif
