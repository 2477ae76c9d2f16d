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

#include "subnyq/model.hpp"
#include "subnyq/error.hpp"
#include "subnyq/fft.hpp"
#include "subnyq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace subnyq::model
{
    std::vector<double> SignalScene::carriers() const
    {
        std::vector<double> out;
        for (const auto &t : transmissions)
            out.push_back(t.carrier_hz);
        return out;
    }

    std::vector<double> SignalScene::aoas() const
    {
        std::vector<double> out;
        for (const auto &t : transmissions)
            out.push_back(t.aoa_rad);
        return out;
    }

    namespace
    {
        // Returns an empty string when the carrier/AOA set satisfies every constraint.
        std::string check_constraints(const std::vector<double> &f, const std::vector<double> &th, double f_nyq,
                                      double b, ModelClass cls)
        {
            const double edge = 0.5 * (f_nyq - b);
            for (std::size_t i = 0; i < f.size(); ++i)
                if (std::abs(f[i]) > edge * (1.0 + 1e-12))
                    return "carrier " + std::to_string(i) + " outside [-(f_nyq-B)/2, (f_nyq-B)/2]";
            for (std::size_t i = 0; i < f.size(); ++i)
                for (std::size_t j = i + 1; j < f.size(); ++j)
                    if (!(std::abs(f[i] - f[j]) > b))
                        return "carriers " + std::to_string(i) + " and " + std::to_string(j) + " overlap";
            if (cls == ModelClass::M2)
            {
                const double sep = kElectronicAngleSeparation * f_nyq;
                for (std::size_t i = 0; i < f.size(); ++i)
                    for (std::size_t j = i + 1; j < f.size(); ++j)
                    {
                        if (std::abs(f[i] * std::cos(th[i]) - f[j] * std::cos(th[j])) <= sep)
                            return "f cos(theta) not distinct for " + std::to_string(i) + ", " + std::to_string(j);
                        if (std::abs(f[i] * std::sin(th[i]) - f[j] * std::sin(th[j])) <= sep)
                            return "f sin(theta) not distinct for " + std::to_string(i) + ", " + std::to_string(j);
                    }
            }
            return {};
        }
    }

    void SignalScene::validate() const
    {
        if (!(f_nyq_hz > 0.0) || !(bandwidth_hz > 0.0))
            throw ConfigError("scene: f_nyq and B must be positive");
        for (const auto &t : transmissions)
        {
            if (!(t.power > 0.0))
                throw ConfigError("scene: transmission power must be positive");
            if (t.bandwidth_hz > bandwidth_hz)
                throw ConfigError("scene: transmission bandwidth exceeds B");
            if (!(std::abs(t.aoa_rad) < 0.5 * kPi))
                throw ConfigError("scene: AOA must lie in (-pi/2, pi/2)");
        }
        if (model.cls == ModelClass::M1 && !(std::abs(model.shared_aoa_rad) < 0.5 * kPi))
            throw ConfigError("scene: shared AOA of M1 must differ from +-90 degrees");
        const std::string why = check_constraints(carriers(), aoas(), f_nyq_hz, bandwidth_hz, model.cls);
        if (!why.empty())
            throw ConfigError("scene: " + why);
    }

    void ArrayGeometry::validate() const
    {
        if (n_per_axis < 2)
            throw ConfigError("geometry: need N >= 2");
        if (!(spacing_m > 0.0))
            throw ConfigError("geometry: spacing must be positive");
        if (!(wave_speed > 0.0))
            throw ConfigError("geometry: wave speed must be positive");
    }

    SignalScene draw_scene(int m, double f_nyq, double b, SceneModel model, std::uint64_t rng_seed,
                           double carrier_grid_hz)
    {
        if (m < 0)
            throw ConfigError("draw_scene: negative transmission count");
        if (!(f_nyq > 0.0) || !(b > 0.0))
            throw ConfigError("draw_scene: f_nyq and b must be positive");
        if (!(m * b < 0.5 * f_nyq))
            throw ConfigError("draw_scene: need m * b < f_nyq / 2");
        if (model.cls == ModelClass::M1 && !(std::abs(model.shared_aoa_rad) < 0.5 * kPi))
            throw ConfigError("draw_scene: shared AOA must differ from +-90 degrees");

        std::mt19937_64 rng(rng_seed);
        const double edge = 0.5 * (f_nyq - b);
        std::uniform_real_distribution<double> carrier_dist(-edge, edge);
        const double max_aoa = deg_to_rad(85.0);
        std::uniform_real_distribution<double> aoa_dist(-max_aoa, max_aoa);

        std::vector<double> f(m), th(m);
        for (int attempt = 0; attempt < kMaxSceneAttempts; ++attempt)
        {
            for (int i = 0; i < m; ++i)
            {
                const double raw = carrier_dist(rng);
                double fi = raw;
                if (carrier_grid_hz > 0.0)
                {
                    fi = std::round(raw / carrier_grid_hz) * carrier_grid_hz;
                    if (std::abs(fi) > edge)
                        fi = std::trunc(raw / carrier_grid_hz) * carrier_grid_hz;
                }
                f[i] = fi;
                th[i] = model.cls == ModelClass::M1 ? model.shared_aoa_rad : aoa_dist(rng);
            }
            if (!check_constraints(f, th, f_nyq, b, model.cls).empty())
                continue;

            SignalScene scene;
            scene.f_nyq_hz = f_nyq;
            scene.bandwidth_hz = b;
            scene.model = model;
            for (int i = 0; i < m; ++i)
                scene.transmissions.push_back({f[i], th[i], b, linalg::derive_seed(rng_seed, 0x5ca1ab1e, i), 1.0});
            return scene;
        }
        std::ostringstream msg;
        msg << "draw_scene: no valid scene after " << kMaxSceneAttempts << " attempts (m=" << m << ", b=" << b
            << ", f_nyq=" << f_nyq << ")";
        throw ConstraintError(msg.str());
    }

    cplx BandSignal::at(long long bin) const
    {
        const long long i = bin - first_bin;
        if (i < 0 || i >= values.size())
            return {0.0, 0.0};
        return values(i);
    }

    CVec BandSignal::samples(Eigen::Index n) const
    {
        if (values.size() > n)
            throw DimensionError("BandSignal::samples: band wider than the requested period");
        CVec spec = CVec::Zero(n);
        for (Eigen::Index i = 0; i < values.size(); ++i)
            spec(fft::bin_index(first_bin + i, n)) += values(i);
        return fft::backward(spec);
    }

    NyquistSignal NyquistSignal::zeros(double bin_hz, long long bins)
    {
        NyquistSignal u;
        u.bin_hz = bin_hz;
        u.bins = bins;
        u.spectrum = CVec::Zero(bins);
        return u;
    }

    void NyquistSignal::add_band(const BandSignal &band)
    {
        for (Eigen::Index i = 0; i < band.values.size(); ++i)
        {
            const long long j = band.carrier_bin + band.first_bin + i;
            if (contains(j))
                at(j) += band.values(i);
        }
    }

    CVec NyquistSignal::time() const
    {
        CVec spec(bins);
        for (long long j = -(bins / 2); j < bins - bins / 2; ++j)
            spec(fft::bin_index(j, bins)) = at(j);
        return fft::backward(spec);
    }

    long long half_band_bins(double bandwidth, double bin_hz)
    {
        if (!(bin_hz > 0.0))
            throw ConfigError("half_band_bins: bin spacing must be positive");
        const double ratio = 0.5 * bandwidth / bin_hz;
        return static_cast<long long>(std::ceil(ratio - 1e-9)) - 1;
    }

    namespace
    {
        CVec complex_gaussian(Eigen::Index n, std::uint64_t seed)
        {
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> g(0.0, std::sqrt(0.5));
            CVec v(n);
            for (Eigen::Index i = 0; i < n; ++i)
            {
                const double re = g(rng);
                const double im = g(rng);
                v(i) = {re, im};
            }
            return v;
        }
    }

    CVec gen_baseband(double bandwidth, Eigen::Index n_samples, double rate, std::uint64_t rng_seed)
    {
        if (n_samples <= 0)
            throw ConfigError("gen_baseband: n_samples must be positive");
        if (!(rate >= bandwidth) || !(bandwidth > 0.0))
            throw ConfigError("gen_baseband: need 0 < bandwidth <= rate");

        CVec spec = complex_gaussian(n_samples, rng_seed);
        const double bin_hz = rate / static_cast<double>(n_samples);
        for (Eigen::Index k = 0; k < n_samples; ++k)
            if (!(std::abs(fft::signed_bin(k, n_samples) * bin_hz) < 0.5 * bandwidth))
                spec(k) = 0.0;
        const double energy = spec.squaredNorm();
        if (energy > 0.0)
            spec /= std::sqrt(energy);
        return fft::backward(spec); // mean |s|^2 = sum |S|^2 = 1
    }

    BandSignal gen_band_spectrum(double bandwidth, double bin_hz, std::uint64_t rng_seed, double power)
    {
        const long long nb = half_band_bins(bandwidth, bin_hz);
        if (nb < 0)
            throw ConfigError("gen_band_spectrum: band narrower than one bin");
        BandSignal s;
        s.bin_hz = bin_hz;
        s.first_bin = -nb;
        s.values = complex_gaussian(2 * nb + 1, rng_seed);
        s.values *= std::sqrt(power / s.values.squaredNorm());
        return s;
    }

    std::string to_string(ModelClass c) { return c == ModelClass::M1 ? "M1" : "M2"; }

    std::string to_string(ArrayKind k)
    {
        switch (k)
        {
        case ArrayKind::Ula:
            return "ula";
        case ArrayKind::LShape:
            return "lshape";
        case ArrayKind::MwcSingleSensor:
            return "mwc";
        }
        return "?";
    }

    ModelClass model_class_from_string(const std::string &s)
    {
        if (s == "M1" || s == "m1")
            return ModelClass::M1;
        if (s == "M2" || s == "m2")
            return ModelClass::M2;
        throw ConfigError("unknown model class '" + s + "'");
    }

    ArrayKind array_kind_from_string(const std::string &s)
    {
        if (s == "ula")
            return ArrayKind::Ula;
        if (s == "lshape")
            return ArrayKind::LShape;
        if (s == "mwc")
            return ArrayKind::MwcSingleSensor;
        throw ConfigError("unknown array kind '" + s + "'");
    }
}
