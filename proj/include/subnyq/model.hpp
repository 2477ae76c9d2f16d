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

#ifndef SUBNYQ_MODEL_HPP
#define SUBNYQ_MODEL_HPP

#include "subnyq/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace subnyq::model
{
    // Signal classes: M1 shares one known AOA across all transmissions,
    // M2 has an unknown, distinct AOA per transmission.
    enum class ModelClass
    {
        M1,
        M2
    };

    struct SceneModel
    {
        ModelClass cls = ModelClass::M1;
        double shared_aoa_rad = 0.0; // M1 only

        static SceneModel m1(double theta_rad) { return {ModelClass::M1, theta_rad}; }
        static SceneModel m2() { return {ModelClass::M2, 0.0}; }
    };

    struct Transmission
    {
        double carrier_hz = 0.0;
        double aoa_rad = 0.0;
        double bandwidth_hz = 0.0;
        std::uint64_t seed = 0; // drives the baseband waveform
        double power = 1.0;     // sigma_i^2
    };

    struct SignalScene
    {
        std::vector<Transmission> transmissions;
        double f_nyq_hz = 0.0;
        double bandwidth_hz = 0.0; // B, upper bound on every transmission bandwidth
        SceneModel model;

        int size() const { return static_cast<int>(transmissions.size()); }
        std::vector<double> carriers() const;
        std::vector<double> aoas() const;

        // Throws ConfigError naming the first violated invariant.
        void validate() const;
    };

    enum class ArrayKind
    {
        Ula,
        LShape,
        MwcSingleSensor
    };

    struct ArrayGeometry
    {
        ArrayKind kind = ArrayKind::Ula;
        int n_per_axis = 2;
        double spacing_m = 0.03;
        double wave_speed = kSpeedOfLight;

        // Sensors (or MWC channels) producing samples; the L-shape shares its origin sensor.
        int total_sensors() const { return kind == ArrayKind::LShape ? 2 * n_per_axis - 1 : n_per_axis; }
        void validate() const;
    };

    // Random scene obeying all constraints of the chosen class. Carriers are
    // uniform in [-(f_nyq - b)/2, (f_nyq - b)/2]; M2 AOAs uniform in
    // [-85, 85] degrees. A positive carrier_grid_hz rounds carriers to that
    // grid before the constraints are checked.
    SignalScene draw_scene(int m, double f_nyq, double b, SceneModel model, std::uint64_t rng_seed,
                           double carrier_grid_hz = 0.0);

    inline constexpr int kMaxSceneAttempts = 10000;

    // M2 electronic angles closer than this fraction of f_nyq count as equal.
    inline constexpr double kElectronicAngleSeparation = 1e-4;

    // Band-limited spectrum on a uniform bin grid: bin (first_bin + i) sits at
    // frequency (first_bin + i) * bin_hz and holds values(i). The matching time
    // signal is s(t) = sum_b S[b] exp(j 2 pi b bin_hz t).
    struct BandSignal
    {
        double bin_hz = 0.0;
        long long first_bin = 0;
        CVec values;
        long long carrier_bin = 0; // absolute bin of the carrier when the band is remodulated

        long long last_bin() const { return first_bin + values.size() - 1; }
        double power() const { return values.squaredNorm(); }
        cplx at(long long bin) const;

        // n samples at rate n * bin_hz (one full period of the periodic signal).
        CVec samples(Eigen::Index n) const;
    };

    // Multiband signal on the Nyquist grid: spectrum(J + bins/2) holds the
    // value of bin J in [-(bins/2), bins/2). time() returns one period of
    // u[t] = sum_J U[J] exp(j 2 pi J t / bins) sampled at bins * bin_hz.
    struct NyquistSignal
    {
        double bin_hz = 0.0;
        long long bins = 0;
        CVec spectrum;

        static NyquistSignal zeros(double bin_hz, long long bins);
        bool contains(long long bin) const { return bin >= -(bins / 2) && bin < bins - bins / 2; }
        cplx &at(long long bin) { return spectrum(bin + bins / 2); }
        cplx at(long long bin) const { return spectrum(bin + bins / 2); }

        // Adds the band remodulated to its carrier bin; bins outside the grid are dropped.
        void add_band(const BandSignal &band);
        double energy() const { return spectrum.squaredNorm(); }
        CVec time() const;
    };

    // Complex white Gaussian noise shaped by an ideal brick-wall filter to
    // |f| < bandwidth / 2, then scaled to unit average power.
    CVec gen_baseband(double bandwidth, Eigen::Index n_samples, double rate, std::uint64_t rng_seed);

    // Same waveform model expressed directly on a frequency grid: Gaussian
    // values on every bin with |b * bin_hz| < bandwidth / 2, scaled so the
    // total power equals `power`.
    BandSignal gen_band_spectrum(double bandwidth, double bin_hz, std::uint64_t rng_seed, double power = 1.0);

    // Largest b with b * bin_hz < bandwidth / 2.
    long long half_band_bins(double bandwidth, double bin_hz);

    std::string to_string(ModelClass c);
    std::string to_string(ArrayKind k);
    ModelClass model_class_from_string(const std::string &s);
    ArrayKind array_kind_from_string(const std::string &s);
}

#endif
