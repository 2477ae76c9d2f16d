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

#ifndef SUBNYQ_RECON_HPP
#define SUBNYQ_RECON_HPP

#include "subnyq/frontend.hpp"
#include "subnyq/sparse.hpp"

#include <vector>

namespace subnyq::recon
{
    // Column pairs with |cos| above 1 - kCollinearTol count as collinear.
    inline constexpr double kCollinearTol = 1e-6;

    // w_hat = A^+ y. Throws RankDeficientError naming the nearly collinear
    // column pairs when A lacks full column rank or has a collinear pair.
    CMat invert_steering(const CMat &y, const CMat &a);

    // ULA: A from the x axis. L-shape: stacked [A_x; A_z rows 1..N-1] against [x; z rows 1..N-1].
    CMat invert_steering(const frontend::SampleSet &samples, const std::vector<double> &carriers,
                         const std::vector<double> &aoas);

    // Moves the aliased baseband row of transmission i back to its carrier:
    // every Nyquist bin J with |J bin_hz - f_i| < bandwidth / 2 takes
    // W[J - l_a p] / c_{-l_a}, l_a = floor((J + p/2) / p). The result uses
    // absolute bins (carrier_bin = 0).
    model::BandSignal unfold_spectrum(const CVec &w_hat_row, double f_i, const frontend::FrontEndConfig &cfg,
                                      double bandwidth, double f_nyq);

    // Contributing alias index for absolute bin J and alias period p.
    long long alias_index(long long bin, long long p);

    // Sum of the bands on the Nyquist grid of cfg.
    model::NyquistSignal assemble(const std::vector<model::BandSignal> &s_hats, const frontend::FrontEndConfig &cfg,
                                  double f_nyq);

    struct Metrics
    {
        double mse_norm = 0.0;    // |u - u_hat|^2 / |u|^2
        double mse_per_tx = 0.0;  // mean over matched transmissions of |s_i - s_hat_i|^2 / |s_i|^2
        double carrier_err = 0.0; // sum |f - f_hat| / (M f_nyq)
        double aoa_err = 0.0;     // sum |theta - theta_hat| / (M pi)
    };

    double mse_norm(const model::NyquistSignal &truth, const model::NyquistSignal &estimate);

    // Matched with a minimal-cost assignment on |f - f_hat| / f_nyq; every
    // true carrier left without an estimate adds the maximal error 1.
    double carrier_error(const std::vector<double> &truth, const std::vector<double> &estimate, double f_nyq);

    struct JointError
    {
        double carrier_err = 0.0;
        double aoa_err = 0.0;
    };

    // Pairs matched jointly on |f - f_hat| / f_nyq + |theta - theta_hat| / pi.
    JointError joint_error(const std::vector<double> &f_truth, const std::vector<double> &th_truth,
                           const std::vector<double> &f_est, const std::vector<double> &th_est, double f_nyq);

    struct Reconstruction
    {
        CMat w_hat;
        std::vector<model::BandSignal> s_hat; // absolute Nyquist bins
        model::NyquistSignal u_hat;
        std::vector<double> carriers;
        std::vector<double> aoas;
    };

    // Array path: invert the steering matrix of the estimated parameters, unfold each row, assemble.
    Reconstruction reconstruct_array(const frontend::SampleSet &samples, const std::vector<double> &carriers,
                                     const std::vector<double> &aoas, const frontend::FrontEndConfig &cfg,
                                     double bandwidth, double f_nyq);

    // MWC path: CTF frame and SOMP with `atoms` slices on the sensing
    // matrix, least squares on the support, slices placed back on the grid.
    Reconstruction reconstruct_mwc(const frontend::SampleSet &samples, const frontend::FrontEndConfig &cfg,
                                   int atoms, double f_nyq);

    // Per-transmission error of estimated bands against the truth, matched by carrier.
    double band_mse(const model::SignalScene &scene, const frontend::FrontEndConfig &cfg,
                    const std::vector<model::BandSignal> &s_hat, const std::vector<double> &carriers);
}

#endif
