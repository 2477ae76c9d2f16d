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

#ifndef SUBNYQ_SPARSE_HPP
#define SUBNYQ_SPARSE_HPP

#include "subnyq/esprit.hpp"

#include <utility>
#include <vector>

namespace subnyq::sparse
{
    // Grid point of one atom. 1D grids store the carrier in alpha; joint
    // grids store alpha = f cos(theta) and beta = f sin(theta).
    struct AtomParams
    {
        double alpha = 0.0;
        double beta = 0.0;
        int l1 = 0;
        int l2 = 0;
    };

    struct Dictionary
    {
        CMat g;
        double grid_delta = 0.0;
        std::vector<AtomParams> atoms;
        bool joint = false;

        Eigen::Index size() const { return g.cols(); }
    };

    // Grid L = floor(f_nyq / (2 delta)) and G(n, l) = exp(j 2 pi tau_n l delta),
    // tau_n = d n cos(theta) / c, for l = -L..L.
    Dictionary build_grid_1d(int n, double delta, double f_nyq, double d, double c, double theta);

    // Joint (alpha, beta) grid on l delta, l = -L..L per axis, with atoms
    // beyond the Nyquist circle alpha^2 + beta^2 > (f_nyq / 2)^2 removed.
    // Rows follow the stacked L-shape layout [x rows 0..N-1; z rows 1..N-1].
    Dictionary build_grid_joint(int n_per_axis, double delta, double f_nyq, double d, double c);

    struct SupportEstimate
    {
        std::vector<int> indices; // ascending
        double residual_norm = 0.0;
    };

    // V = U_+ Lambda_+^{1/2} over eigenvalues above 1e-8 lambda_max, so that R = V V^H.
    CMat ctf_frame(const esprit::CovarianceMatrix &r);

    // Simultaneous OMP with exactly m selections. Ties go to the lowest column.
    SupportEstimate somp(const CMat &v, const CMat &dict, int m);

    // Simultaneous OMP that stops once |residual|_F <= rel_tol |v|_F.
    SupportEstimate somp_until(const CMat &v, const CMat &dict, double rel_tol = 1e-6);

    SupportEstimate omp(const CVec &y, const CMat &dict, int m);
    SupportEstimate omp_until(const CVec &y, const CMat &dict, double rel_tol = 1e-6);

    struct KraoSystem
    {
        CVec measurement; // vec(R), column-major
        CMat dictionary;  // conj(G) (.) G
    };

    // vec(R) = (conj(G) (.) G) r for a covariance R = G diag(r) G^H.
    KraoSystem krao_model(const esprit::CovarianceMatrix &r, const Dictionary &joint);

    // Only the Khatri-Rao matrix of a joint dictionary (shareable across trials).
    CMat krao_dictionary(const Dictionary &joint);
    CVec vec(const CMat &r);

    // Physical L-shape sensors stacked as [x; z rows 1..N-1].
    CMat lshape_stack(const frontend::SampleSet &samples);
    esprit::CovarianceMatrix joint_covariance(const frontend::SampleSet &samples);

    // (carrier, aoa) of a joint atom; theta is folded into (-pi/2, pi/2].
    std::pair<double, double> atom_to_carrier_aoa(double alpha, double beta);

    // Carriers of the selected atoms of a 1D dictionary, ascending.
    std::vector<double> support_carriers(const Dictionary &dict, const SupportEstimate &support);
}

#endif
