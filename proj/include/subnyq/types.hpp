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

#ifndef SUBNYQ_TYPES_HPP
#define SUBNYQ_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <numbers>

namespace subnyq
{
    using cplx = std::complex<double>;
    using CVec = Eigen::VectorXcd;
    using CMat = Eigen::MatrixXcd;
    using RVec = Eigen::VectorXd;
    using RMat = Eigen::MatrixXd;

    inline constexpr double kPi = std::numbers::pi;
    inline constexpr double kSpeedOfLight = 3.0e8; // m/s, the value the reference setup uses
    inline constexpr cplx kJ{0.0, 1.0};

    // Singular values below this fraction of the largest are treated as zero.
    inline constexpr double kRankTolerance = 1e-8;

    inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
    inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }
}

#endif
