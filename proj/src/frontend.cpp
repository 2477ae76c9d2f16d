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

#include "subnyq/frontend.hpp"
#include "subnyq/error.hpp"
#include "subnyq/fft.hpp"
#include "subnyq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace subnyq::frontend
{
    double delay(int n, double d, double theta, double c, Axis axis)
    {
        const double trig = axis == Axis::X ? std::cos(theta) : std::sin(theta);
        return d * static_cast<double>(n) * trig / c;
    }

    std::vector<int> random_sign_sequence(int n_chips, std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        std::vector<int> chips(n_chips);
        for (auto &a : chips)
            a = (rng() >> 63) ? 1 : -1;
        return chips;
    }

    cplx sign_sequence_coeff(const std::vector<int> &chips, long long l)
    {
        const double k = static_cast<double>(chips.size());
        if (chips.empty())
            return {0.0, 0.0};
        if (l == 0)
        {
            double sum = 0.0;
            for (int a : chips)
                sum += a;
            return {sum / k, 0.0};
        }
        // Chip m covers [m T/K, (m+1) T/K); its integral contributes
        // a_m exp(-j 2 pi l m / K) (1 - exp(-j 2 pi l / K)) / (j 2 pi l).
        const double w = 2.0 * kPi * static_cast<double>(l) / k;
        cplx sum{0.0, 0.0};
        for (std::size_t m = 0; m < chips.size(); ++m)
            sum += static_cast<double>(chips[m]) * std::polar(1.0, -w * static_cast<double>(m));
        const cplx factor = (1.0 - std::polar(1.0, -w)) / (kJ * 2.0 * kPi * static_cast<double>(l));
        return factor * sum;
    }

    CVec fourier_coeffs(const std::vector<int> &chips, int l0)
    {
        if (l0 < 0)
            throw ConfigError("fourier_coeffs: l0 must be non-negative");
        CVec c(2 * l0 + 1);
        for (int l = -l0; l <= l0; ++l)
            c(l + l0) = sign_sequence_coeff(chips, l);
        return c;
    }

    CVec fourier_coeffs_dirac(int l0)
    {
        if (l0 < 0)
            throw ConfigError("fourier_coeffs: l0 must be non-negative");
        return CVec::Ones(2 * l0 + 1);
    }

    void require_nonzero(const CVec &coeffs, int l0, double tol)
    {
        for (Eigen::Index i = 0; i < coeffs.size(); ++i)
            if (std::abs(coeffs(i)) <= tol)
            {
                std::ostringstream msg;
                msg << "mixing coefficient c_" << (i - l0) << " vanishes; waveform recovery impossible";
                throw ConfigError(msg.str());
            }
    }

    int FrontEndConfig::l0(double f_nyq) const { return static_cast<int>(std::ceil(f_nyq / (2.0 * f_p) - 1e-12)); }

    std::vector<int> FrontEndConfig::chips(int channel, double f_nyq) const
    {
        if (!mixing.explicit_chips.empty())
            return mixing.explicit_chips[static_cast<std::size_t>(channel) % mixing.explicit_chips.size()];
        return random_sign_sequence(2 * l0(f_nyq) + 1, linalg::derive_seed(mixing.seed, 0xc41, channel));
    }

    cplx FrontEndConfig::coeff(int channel, long long l, double f_nyq) const
    {
        if (mixing.kind == MixingKind::DiracComb)
            return {1.0, 0.0};
        return sign_sequence_coeff(chips(channel, f_nyq), l);
    }

    void FrontEndConfig::validate(bool full_recovery) const
    {
        if (!(f_p > 0.0) || !(f_s > 0.0))
            throw ConfigError("front end: f_p and f_s must be positive");
        if (q_snapshots < 1)
            throw ConfigError("front end: need at least one snapshot");
        if (full_recovery && f_s < f_p)
            throw ConfigError("front end: waveform recovery needs f_s >= f_p");
    }

    SimGrid SimGrid::make(const FrontEndConfig &cfg, double f_nyq)
    {
        cfg.validate(false);
        SimGrid g;
        g.q = cfg.q_snapshots;
        g.bin_hz = cfg.f_s / static_cast<double>(g.q);
        const double p = cfg.f_p / g.bin_hz;
        g.p = std::llround(p);
        if (g.p < 1 || std::abs(p - static_cast<double>(g.p)) > 1e-9 * p)
            throw ConfigError("front end: f_p must be an integer multiple of f_s / Q");
        g.passband = g.q;
        g.nyq = 2 * static_cast<long long>(std::ceil(f_nyq / (2.0 * g.bin_hz) - 1e-9));
        g.l0 = cfg.l0(f_nyq);
        return g;
    }

    long long SimGrid::carrier_bin(double f) const
    {
        const long long c = std::llround(f / bin_hz);
        if (std::abs(static_cast<double>(c) * bin_hz - f) > 1e-6 * bin_hz)
        {
            std::ostringstream msg;
            msg << "carrier " << f << " Hz is not on the simulation grid (spacing " << bin_hz << " Hz)";
            throw ConfigError(msg.str());
        }
        return c;
    }

    std::vector<model::BandSignal> baseband_spectra(const model::SignalScene &scene, const SimGrid &grid)
    {
        std::vector<model::BandSignal> out;
        for (const auto &t : scene.transmissions)
        {
            model::BandSignal s = model::gen_band_spectrum(t.bandwidth_hz, grid.bin_hz, t.seed, t.power);
            s.carrier_bin = grid.carrier_bin(t.carrier_hz);
            out.push_back(std::move(s));
        }
        return out;
    }

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

    CVec alias_spectrum(const model::BandSignal &band, const FrontEndConfig &cfg, const SimGrid &grid, double f_nyq,
                        int channel)
    {
        CVec w = CVec::Zero(grid.q);
        const bool comb = cfg.mixing.kind == MixingKind::DiracComb;
        const std::vector<int> chips = comb ? std::vector<int>{} : cfg.chips(channel, f_nyq);
        const long long lo = grid.passband_lo();
        const long long hi = lo + grid.passband - 1;
        for (Eigen::Index i = 0; i < band.values.size(); ++i)
        {
            const long long bin = band.carrier_bin + band.first_bin + i;
            // Mixing moves bin J to J + l p; keep the copies inside the LPF passband.
            const long long l_first = -floor_div(bin - lo, grid.p);
            const long long l_last = floor_div(hi - bin, grid.p);
            for (long long l = l_first; l <= l_last; ++l)
            {
                const cplx c = comb ? cplx{1.0, 0.0} : sign_sequence_coeff(chips, l);
                w(fft::bin_index(bin + l * grid.p, grid.q)) += c * band.values(i);
            }
        }
        return w;
    }

    CMat alias_baseband(const model::SignalScene &scene, const FrontEndConfig &cfg)
    {
        const SimGrid grid = SimGrid::make(cfg, scene.f_nyq_hz);
        const auto bands = baseband_spectra(scene, grid);
        CMat w(scene.size(), grid.q);
        for (int i = 0; i < scene.size(); ++i)
            w.row(i) = fft::backward(alias_spectrum(bands[i], cfg, grid, scene.f_nyq_hz)).transpose();
        return w;
    }

    bool recovery_regime(const FrontEndConfig &cfg, double bandwidth)
    {
        return cfg.f_s >= cfg.f_p && cfg.f_p >= bandwidth;
    }

    double alias_overlap(const FrontEndConfig &cfg, double bandwidth) { return std::max(0.0, bandwidth - cfg.f_p); }

    CMat steering_columns(const std::vector<double> &carriers, const std::vector<double> &aoas, int rows, double d,
                          double c, Axis axis, int first_row)
    {
        if (carriers.size() != aoas.size())
            throw DimensionError("steering: carrier and AOA counts differ");
        CMat a(rows, static_cast<Eigen::Index>(carriers.size()));
        for (std::size_t i = 0; i < carriers.size(); ++i)
            for (int r = 0; r < rows; ++r)
            {
                const double tau = delay(first_row + r, d, aoas[i], c, axis);
                a(r, static_cast<Eigen::Index>(i)) = std::polar(1.0, 2.0 * kPi * carriers[i] * tau);
            }
        return a;
    }

    SteeringMatrix steering(const model::SignalScene &scene, const model::ArrayGeometry &geometry, Axis axis)
    {
        return {steering_columns(scene.carriers(), scene.aoas(), geometry.n_per_axis, geometry.spacing_m,
                                 geometry.wave_speed, axis),
                axis};
    }

    CMat lshape_steering(const std::vector<double> &carriers, const std::vector<double> &aoas,
                         const model::ArrayGeometry &geometry)
    {
        const int n = geometry.n_per_axis;
        CMat a(2 * n - 1, static_cast<Eigen::Index>(carriers.size()));
        a.topRows(n) = steering_columns(carriers, aoas, n, geometry.spacing_m, geometry.wave_speed, Axis::X);
        a.bottomRows(n - 1) =
            steering_columns(carriers, aoas, n - 1, geometry.spacing_m, geometry.wave_speed, Axis::Z, 1);
        return a;
    }

    void SampleSet::validate() const
    {
        const bool lshape = geometry.kind == model::ArrayKind::LShape;
        if (lshape != z.has_value())
            throw DimensionError("sample set: z must be present exactly for the L-shaped array");
        if (x.rows() != geometry.n_per_axis)
            throw DimensionError("sample set: x row count differs from the sensor count");
        if (z && (z->rows() != x.rows() || z->cols() != x.cols()))
            throw DimensionError("sample set: x and z shapes differ");
    }

    namespace
    {
        CMat complex_noise(Eigen::Index rows, Eigen::Index cols, double sigma, std::mt19937_64 &rng)
        {
            std::normal_distribution<double> g(0.0, sigma * std::sqrt(0.5));
            CMat e(rows, cols);
            for (Eigen::Index c = 0; c < cols; ++c)
                for (Eigen::Index r = 0; r < rows; ++r)
                {
                    const double re = g(rng);
                    const double im = g(rng);
                    e(r, c) = {re, im};
                }
            return e;
        }

        double noise_sigma(double signal_power, double snr_db)
        {
            if (std::isinf(snr_db) && snr_db > 0.0)
                return 0.0;
            return std::sqrt(signal_power / std::pow(10.0, snr_db / 10.0));
        }

        SampleSet sample_mwc(const model::SignalScene &scene, const model::ArrayGeometry &geometry,
                             const FrontEndConfig &cfg, double snr_db, std::uint64_t rng_seed)
        {
            const SimGrid grid = SimGrid::make(cfg, scene.f_nyq_hz);
            const model::NyquistSignal u = render_truth(scene, cfg);
            const int channels = geometry.n_per_axis;

            // One noise realization over the whole Nyquist band, shared by every channel.
            std::mt19937_64 rng(rng_seed);
            const CMat h = complex_noise(grid.nyq, 1, 1.0, rng);

            const CMat c = mwc_sensing_matrix(cfg, channels, scene.f_nyq_hz);
            CMat y_sig = CMat::Zero(channels, grid.q);
            CMat y_noise = CMat::Zero(channels, grid.q);
            const long long lo = grid.passband_lo();
            for (int l = -grid.l0; l <= grid.l0; ++l)
                for (long long j = lo; j < lo + grid.passband; ++j)
                {
                    const long long src = j - l * grid.p;
                    if (!u.contains(src))
                        continue;
                    const Eigen::Index k = fft::bin_index(j, grid.q);
                    const cplx us = u.at(src);
                    const cplx hs = h(src + grid.nyq / 2, 0);
                    for (int n = 0; n < channels; ++n)
                    {
                        y_sig(n, k) += c(n, l + grid.l0) * us;
                        y_noise(n, k) += c(n, l + grid.l0) * hs;
                    }
                }

            // Powers per time sample equal spectral energies (unnormalized backward transform).
            const double ps = y_sig.squaredNorm() / channels;
            const double pn = y_noise.squaredNorm() / channels;
            const double sigma = pn > 0.0 ? noise_sigma(ps, snr_db) / std::sqrt(pn) : 0.0;

            SampleSet out;
            out.geometry = geometry;
            out.f_s = cfg.f_s;
            out.x.resize(channels, grid.q);
            for (int n = 0; n < channels; ++n)
            {
                CVec spec = y_sig.row(n).transpose();
                if (sigma > 0.0)
                    spec += sigma * y_noise.row(n).transpose();
                out.x.row(n) = fft::backward(spec).transpose();
            }
            return out;
        }
    }

    SampleSet sample_from_baseband(const CMat &w, const model::SignalScene &scene,
                                   const model::ArrayGeometry &geometry, double f_s, double snr_db,
                                   std::uint64_t rng_seed)
    {
        geometry.validate();
        if (w.rows() != scene.size())
            throw DimensionError("sample: baseband row count differs from the transmission count");
        const int n = geometry.n_per_axis;
        SampleSet out;
        out.geometry = geometry;
        out.f_s = f_s;
        std::mt19937_64 rng(rng_seed);

        if (geometry.kind == model::ArrayKind::Ula)
        {
            out.x = steering(scene, geometry, Axis::X).entries * w;
            const double sigma = noise_sigma(out.x.squaredNorm() / static_cast<double>(out.x.size()), snr_db);
            if (sigma > 0.0 && out.x.size() > 0)
                out.x += complex_noise(out.x.rows(), out.x.cols(), sigma, rng);
            return out;
        }
        if (geometry.kind == model::ArrayKind::LShape)
        {
            // One row per physical sensor: origin, x axis 1..N-1, z axis 1..N-1.
            CMat v = lshape_steering(scene.carriers(), scene.aoas(), geometry) * w;
            const double sigma = noise_sigma(v.size() ? v.squaredNorm() / static_cast<double>(v.size()) : 0.0, snr_db);
            if (sigma > 0.0 && v.size() > 0)
                v += complex_noise(v.rows(), v.cols(), sigma, rng);
            out.x = v.topRows(n);
            CMat z(n, v.cols());
            z.row(0) = v.row(0);
            z.bottomRows(n - 1) = v.bottomRows(n - 1);
            out.z = std::move(z);
            return out;
        }
        throw ConfigError("sample_from_baseband: the MWC front end has no array baseband form");
    }

    SampleSet sample(const model::SignalScene &scene, const model::ArrayGeometry &geometry,
                     const FrontEndConfig &cfg, double snr_db, std::uint64_t rng_seed)
    {
        geometry.validate();
        if (geometry.kind == model::ArrayKind::MwcSingleSensor)
            return sample_mwc(scene, geometry, cfg, snr_db, rng_seed);
        return sample_from_baseband(alias_baseband(scene, cfg), scene, geometry, cfg.f_s, snr_db, rng_seed);
    }

    model::NyquistSignal render_truth(const model::SignalScene &scene, const FrontEndConfig &cfg)
    {
        const SimGrid grid = SimGrid::make(cfg, scene.f_nyq_hz);
        model::NyquistSignal u = model::NyquistSignal::zeros(grid.bin_hz, grid.nyq);
        for (const auto &band : baseband_spectra(scene, grid))
            u.add_band(band);
        return u;
    }

    CMat mwc_sensing_matrix(const FrontEndConfig &cfg, int channels, double f_nyq)
    {
        const int l0 = cfg.l0(f_nyq);
        CMat c(channels, 2 * l0 + 1);
        for (int n = 0; n < channels; ++n)
        {
            if (cfg.mixing.kind == MixingKind::DiracComb)
            {
                c.row(n).setOnes();
                continue;
            }
            const std::vector<int> chips = cfg.chips(n, f_nyq);
            for (int l = -l0; l <= l0; ++l)
                c(n, l + l0) = sign_sequence_coeff(chips, l);
        }
        return c;
    }
}
