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

#ifndef SUBNYQ_FRONTEND_HPP
#define SUBNYQ_FRONTEND_HPP

#include "subnyq/model.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace subnyq::frontend
{
    enum class Axis
    {
        X,
        Z
    };

    // Propagation delay of sensor n: X axis d n cos(theta) / c, Z axis d n sin(theta) / c.
    double delay(int n, double d, double theta, double c, Axis axis);

    enum class MixingKind
    {
        DiracComb,
        RandomSignSequence
    };

    // Periodic mixing waveform p(t). A sign sequence is piecewise constant
    // with `chips` equal-length +-1 pieces per period; channel n draws its
    // chips from derive_seed(seed, n) unless explicit chips are supplied.
    struct MixingSpec
    {
        MixingKind kind = MixingKind::DiracComb;
        std::uint64_t seed = 0;
        std::vector<std::vector<int>> explicit_chips;

        static MixingSpec dirac() { return {}; }
        static MixingSpec sign_sequence(std::uint64_t seed) { return {MixingKind::RandomSignSequence, seed, {}}; }
    };

    std::vector<int> random_sign_sequence(int n_chips, std::uint64_t seed);

    // Fourier series coefficient c_l = (1/T_p) int_0^T_p p(t) exp(-j 2 pi l f_p t) dt
    // of a piecewise constant waveform, in closed form.
    cplx sign_sequence_coeff(const std::vector<int> &chips, long long l);

    // c_{-l0} .. c_{l0}; element l + l0 holds c_l.
    CVec fourier_coeffs(const std::vector<int> &chips, int l0);
    CVec fourier_coeffs_dirac(int l0);

    // Throws ConfigError when some |c_l| <= tol.
    void require_nonzero(const CVec &coeffs, int l0, double tol = 1e-12);

    struct FrontEndConfig
    {
        double f_p = 65e6;
        double f_s = 65e6;
        MixingSpec mixing;
        int q_snapshots = 200;

        // Smallest L0 with every nonzero alias included: ceil(f_nyq / (2 f_p)).
        int l0(double f_nyq) const;

        // Sign sequence of channel n (2 L0 + 1 chips per period).
        std::vector<int> chips(int channel, double f_nyq) const;

        // Mixing coefficient c_l for channel n (1 for a Dirac comb).
        cplx coeff(int channel, long long l, double f_nyq) const;

        // full_recovery additionally demands f_s >= f_p.
        void validate(bool full_recovery) const;
    };

    // Bin bookkeeping of the exact frequency-grid simulation.
    //   bin_hz   spacing f_s / Q
    //   p        f_p / bin_hz (must be an integer)
    //   q        number of snapshots and of bins in F_s = [-(q/2), q - q/2)
    //   passband bins kept by the brick-wall LPF at f_s / 2 (equals q)
    //   nyq      bins of the Nyquist band [-(nyq/2), nyq/2), nyq even
    struct SimGrid
    {
        double bin_hz = 0.0;
        long long q = 0;
        long long p = 0;
        long long passband = 0;
        long long nyq = 0;
        int l0 = 0;

        static SimGrid make(const FrontEndConfig &cfg, double f_nyq);

        long long passband_lo() const { return -(passband / 2); }
        long long fs_lo() const { return -(q / 2); }

        // Bin of an on-grid carrier; throws ConfigError when f is off the grid.
        long long carrier_bin(double f) const;
    };

    // Per-transmission baseband spectra on the grid, tagged with their carrier bins.
    std::vector<model::BandSignal> baseband_spectra(const model::SignalScene &scene, const SimGrid &grid);

    // Spectrum of the mixed, filtered and sampled version of one band (FFT
    // order, length q): W[j] = sum_l c_l S[j - c - l p] over the passband.
    CVec alias_spectrum(const model::BandSignal &band, const FrontEndConfig &cfg, const SimGrid &grid, double f_nyq,
                        int channel = 0);

    // Row i holds w_i[k], k = 0..Q-1.
    CMat alias_baseband(const model::SignalScene &scene, const FrontEndConfig &cfg);

    // True when the configuration admits exact waveform recovery (f_s >= f_p >= B).
    bool recovery_regime(const FrontEndConfig &cfg, double bandwidth);

    // Width of the overlap between neighbouring aliased copies on each side (B - f_p when positive).
    double alias_overlap(const FrontEndConfig &cfg, double bandwidth);

    struct SteeringMatrix
    {
        CMat entries;
        Axis axis = Axis::X;
    };

    SteeringMatrix steering(const model::SignalScene &scene, const model::ArrayGeometry &geometry, Axis axis);

    // entry(n, i) = exp(j 2 pi f_i tau_n(theta_i)), n = first_row .. first_row + rows - 1.
    CMat steering_columns(const std::vector<double> &carriers, const std::vector<double> &aoas, int rows, double d,
                          double c, Axis axis, int first_row = 0);

    // Stacked L-shape steering [A_x; rows 1..N-1 of A_z], one row per physical sensor.
    CMat lshape_steering(const std::vector<double> &carriers, const std::vector<double> &aoas,
                         const model::ArrayGeometry &geometry);

    struct SampleSet
    {
        CMat x; // sensors (or MWC channels) x Q
        std::optional<CMat> z;
        double f_s = 0.0;
        model::ArrayGeometry geometry;

        Eigen::Index snapshots() const { return x.cols(); }
        void validate() const;
    };

    inline constexpr double kNoiseless = std::numeric_limits<double>::infinity();

    // Low-rate samples for the scene. Noise is complex white Gaussian,
    // scaled so the per-sensor (per-channel) SNR equals snr_db.
    SampleSet sample(const model::SignalScene &scene, const model::ArrayGeometry &geometry,
                     const FrontEndConfig &cfg, double snr_db, std::uint64_t rng_seed);

    // Array sampling from precomputed aliased baseband rows w (M x Q).
    SampleSet sample_from_baseband(const CMat &w, const model::SignalScene &scene,
                                   const model::ArrayGeometry &geometry, double f_s, double snr_db,
                                   std::uint64_t rng_seed);

    // Ground-truth multiband signal on the Nyquist grid.
    model::NyquistSignal render_truth(const model::SignalScene &scene, const FrontEndConfig &cfg);

    // MWC sensing matrix: C(n, l + L0) = c_{n,l}.
    CMat mwc_sensing_matrix(const FrontEndConfig &cfg, int channels, double f_nyq);
}

#endif
