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

#include "subnyq/recon.hpp"
#include "subnyq/error.hpp"
#include "subnyq/fft.hpp"
#include "subnyq/kernels.hpp"
#include "subnyq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace subnyq::recon
{
    namespace
    {
        long long floor_div(long long a, long long b)
        {
            long long q = a / b;
            if ((a % b != 0) && ((a < 0) != (b < 0)))
                --q;
            return q;
        }
    }

    CMat invert_steering(const CMat &y, const CMat &a)
    {
        if (y.rows() != a.rows())
            throw DimensionError("invert_steering: sample and steering row counts differ");
        if (a.cols() > a.rows())
        {
            std::ostringstream msg;
            msg << "invert_steering: " << a.cols() << " parameters exceed " << a.rows() << " sensors";
            throw InsufficientSensorsError(msg.str());
        }
        if (a.cols() == 0)
            return CMat(0, y.cols());
        std::vector<std::pair<Eigen::Index, Eigen::Index>> collinear;
        for (Eigen::Index i = 0; i < a.cols(); ++i)
            for (Eigen::Index j = i + 1; j < a.cols(); ++j)
            {
                const double cosine = std::abs(a.col(i).dot(a.col(j))) / (a.col(i).norm() * a.col(j).norm());
                if (cosine > 1.0 - kCollinearTol)
                    collinear.emplace_back(i, j);
            }
        if (!collinear.empty() || linalg::numerical_rank(a) < a.cols())
        {
            std::ostringstream msg;
            msg << "invert_steering: steering matrix is rank deficient; nearly collinear columns:";
            for (const auto &[i, j] : collinear)
                msg << " (" << i << ", " << j << ")";
            throw RankDeficientError(msg.str());
        }
        return linalg::pinv(a) * y;
    }

    CMat invert_steering(const frontend::SampleSet &samples, const std::vector<double> &carriers,
                         const std::vector<double> &aoas)
    {
        const auto &g = samples.geometry;
        if (g.kind == model::ArrayKind::LShape)
            return invert_steering(sparse::lshape_stack(samples), frontend::lshape_steering(carriers, aoas, g));
        if (g.kind == model::ArrayKind::Ula)
            return invert_steering(samples.x, frontend::steering_columns(carriers, aoas, g.n_per_axis, g.spacing_m,
                                                                         g.wave_speed, frontend::Axis::X));
        throw ConfigError("invert_steering: the MWC front end has no steering matrix");
    }

    long long alias_index(long long bin, long long p) { return floor_div(2 * bin + p, 2 * p); }

    model::BandSignal unfold_spectrum(const CVec &w_hat_row, double f_i, const frontend::FrontEndConfig &cfg,
                                      double bandwidth, double f_nyq)
    {
        const frontend::SimGrid grid = frontend::SimGrid::make(cfg, f_nyq);
        if (w_hat_row.size() != grid.q)
            throw DimensionError("unfold_spectrum: row length differs from Q");
        const CVec w = fft::forward(w_hat_row) / static_cast<double>(grid.q);

        const double half = 0.5 * bandwidth / grid.bin_hz;
        const double centre = f_i / grid.bin_hz;
        const long long lo = static_cast<long long>(std::floor(centre - half + 1e-9)) + 1;
        const long long hi = static_cast<long long>(std::ceil(centre + half - 1e-9)) - 1;

        model::BandSignal s;
        s.bin_hz = grid.bin_hz;
        s.first_bin = lo;
        s.carrier_bin = 0;
        s.values = CVec::Zero(std::max<long long>(0, hi - lo + 1));

        const bool comb = cfg.mixing.kind == frontend::MixingKind::DiracComb;
        const std::vector<int> chips = comb ? std::vector<int>{} : cfg.chips(0, f_nyq);
        for (long long j = lo; j <= hi; ++j)
        {
            const long long la = alias_index(j, grid.p);
            const cplx c = comb ? cplx{1.0, 0.0} : frontend::sign_sequence_coeff(chips, -la);
            if (std::abs(c) <= 1e-12)
            {
                std::ostringstream msg;
                msg << "unfold_spectrum: c_" << -la << " vanishes; bin " << j << " is unrecoverable";
                throw ConfigError(msg.str());
            }
            s.values(j - lo) = w(fft::bin_index(j - la * grid.p, grid.q)) / c;
        }
        return s;
    }

    model::NyquistSignal assemble(const std::vector<model::BandSignal> &s_hats, const frontend::FrontEndConfig &cfg,
                                  double f_nyq)
    {
        const frontend::SimGrid grid = frontend::SimGrid::make(cfg, f_nyq);
        model::NyquistSignal u = model::NyquistSignal::zeros(grid.bin_hz, grid.nyq);
        for (const auto &s : s_hats)
            u.add_band(s);
        return u;
    }

    double mse_norm(const model::NyquistSignal &truth, const model::NyquistSignal &estimate)
    {
        if (truth.bins != estimate.bins)
            throw DimensionError("mse_norm: grids differ");
        const double err = (truth.spectrum - estimate.spectrum).squaredNorm();
        const double ref = truth.energy();
        return ref > 0.0 ? err / ref : err;
    }

    namespace
    {
        // Matches rows (truth) to columns (estimates); -1 marks a truth item left unmatched.
        std::vector<int> match(const RMat &cost)
        {
            const Eigen::Index n_t = cost.rows(), n_e = cost.cols();
            std::vector<int> out(n_t, -1);
            if (n_t == 0 || n_e == 0)
                return out;
            if (n_t <= n_e)
                return linalg::min_cost_assignment(cost);
            const std::vector<int> back = linalg::min_cost_assignment(cost.transpose());
            for (std::size_t e = 0; e < back.size(); ++e)
                out[back[e]] = static_cast<int>(e);
            return out;
        }
    }

    double carrier_error(const std::vector<double> &truth, const std::vector<double> &estimate, double f_nyq)
    {
        if (truth.empty())
            return 0.0;
        RMat cost(truth.size(), estimate.size());
        for (std::size_t i = 0; i < truth.size(); ++i)
            for (std::size_t j = 0; j < estimate.size(); ++j)
                cost(i, j) = std::abs(truth[i] - estimate[j]) / f_nyq;
        const std::vector<int> m = match(cost);
        double sum = 0.0;
        for (std::size_t i = 0; i < truth.size(); ++i)
            sum += m[i] < 0 ? 1.0 : std::min(1.0, cost(i, m[i]));
        return sum / static_cast<double>(truth.size());
    }

    JointError joint_error(const std::vector<double> &f_truth, const std::vector<double> &th_truth,
                           const std::vector<double> &f_est, const std::vector<double> &th_est, double f_nyq)
    {
        if (f_truth.size() != th_truth.size() || f_est.size() != th_est.size())
            throw DimensionError("joint_error: carrier and AOA counts differ");
        JointError e;
        if (f_truth.empty())
            return e;
        RMat cf(f_truth.size(), f_est.size()), ct(f_truth.size(), f_est.size());
        for (std::size_t i = 0; i < f_truth.size(); ++i)
            for (std::size_t j = 0; j < f_est.size(); ++j)
            {
                cf(i, j) = std::abs(f_truth[i] - f_est[j]) / f_nyq;
                ct(i, j) = std::abs(th_truth[i] - th_est[j]) / kPi;
            }
        const std::vector<int> m = match(cf + ct);
        for (std::size_t i = 0; i < f_truth.size(); ++i)
        {
            e.carrier_err += m[i] < 0 ? 1.0 : std::min(1.0, cf(i, m[i]));
            e.aoa_err += m[i] < 0 ? 1.0 : std::min(1.0, ct(i, m[i]));
        }
        e.carrier_err /= static_cast<double>(f_truth.size());
        e.aoa_err /= static_cast<double>(f_truth.size());
        return e;
    }

    Reconstruction reconstruct_array(const frontend::SampleSet &samples, const std::vector<double> &carriers,
                                     const std::vector<double> &aoas, const frontend::FrontEndConfig &cfg,
                                     double bandwidth, double f_nyq)
    {
        Reconstruction rec;
        rec.carriers = carriers;
        rec.aoas = aoas;
        rec.w_hat = invert_steering(samples, carriers, aoas);
        for (std::size_t i = 0; i < carriers.size(); ++i)
            rec.s_hat.push_back(unfold_spectrum(rec.w_hat.row(static_cast<Eigen::Index>(i)).transpose(), carriers[i],
                                                cfg, bandwidth, f_nyq));
        rec.u_hat = assemble(rec.s_hat, cfg, f_nyq);
        return rec;
    }

    Reconstruction reconstruct_mwc(const frontend::SampleSet &samples, const frontend::FrontEndConfig &cfg,
                                   int atoms, double f_nyq)
    {
        const frontend::SimGrid grid = frontend::SimGrid::make(cfg, f_nyq);
        const CMat c = frontend::mwc_sensing_matrix(cfg, static_cast<int>(samples.x.rows()), f_nyq);
        const CMat v = sparse::ctf_frame({kernels::gram(samples.x), samples.x.cols(), 1});
        const int k = std::min<int>(atoms, static_cast<int>(std::min(c.rows(), c.cols())));
        const sparse::SupportEstimate support = sparse::somp(v, c, k);

        Reconstruction rec;
        rec.u_hat = model::NyquistSignal::zeros(grid.bin_hz, grid.nyq);
        if (support.indices.empty())
            return rec;

        CMat yf(samples.x.rows(), grid.q);
        for (Eigen::Index n = 0; n < samples.x.rows(); ++n)
            yf.row(n) = (fft::forward(samples.x.row(n).transpose()) / static_cast<double>(grid.q)).transpose();
        CMat cs(c.rows(), static_cast<Eigen::Index>(support.indices.size()));
        for (std::size_t s = 0; s < support.indices.size(); ++s)
            cs.col(static_cast<Eigen::Index>(s)) = c.col(support.indices[s]);
        const CMat z = linalg::pinv(cs) * yf;
        rec.w_hat = z;

        // Slice l holds U[j - l p] at bin j of F_p.
        const long long lo = -(grid.p / 2);
        for (std::size_t s = 0; s < support.indices.size(); ++s)
        {
            const long long l = support.indices[s] - grid.l0;
            for (long long j = lo; j < lo + grid.p; ++j)
            {
                const long long bin = j - l * grid.p;
                if (rec.u_hat.contains(bin))
                    rec.u_hat.at(bin) += z(static_cast<Eigen::Index>(s), fft::bin_index(j, grid.q));
            }
        }
        return rec;
    }

    double band_mse(const model::SignalScene &scene, const frontend::FrontEndConfig &cfg,
                    const std::vector<model::BandSignal> &s_hat, const std::vector<double> &carriers)
    {
        if (scene.size() == 0)
            return 0.0;
        const frontend::SimGrid grid = frontend::SimGrid::make(cfg, scene.f_nyq_hz);
        const auto truth = frontend::baseband_spectra(scene, grid);
        RMat cost(scene.size(), static_cast<Eigen::Index>(carriers.size()));
        for (int i = 0; i < scene.size(); ++i)
            for (std::size_t j = 0; j < carriers.size(); ++j)
                cost(i, j) = std::abs(scene.transmissions[i].carrier_hz - carriers[j]);
        const std::vector<int> m = match(cost);
        double total = 0.0;
        for (int i = 0; i < scene.size(); ++i)
        {
            const auto &t = truth[i];
            const double ref = t.power();
            if (m[i] < 0)
            {
                total += 1.0;
                continue;
            }
            const auto &e = s_hat[m[i]];
            const long long lo = std::min(t.carrier_bin + t.first_bin, e.carrier_bin + e.first_bin);
            const long long hi = std::max(t.carrier_bin + t.last_bin(), e.carrier_bin + e.last_bin());
            double err = 0.0;
            for (long long j = lo; j <= hi; ++j)
                err += std::norm(t.at(j - t.carrier_bin) - e.at(j - e.carrier_bin));
            total += ref > 0.0 ? err / ref : err;
        }
        return total / static_cast<double>(scene.size());
    }
}
