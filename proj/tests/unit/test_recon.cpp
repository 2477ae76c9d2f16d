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

#include "../oracles.hpp"
#include "subnyq/error.hpp"
#include "subnyq/esprit.hpp"
#include "subnyq/fft.hpp"
#include "subnyq/recon.hpp"

#include <doctest.h>

#include <algorithm>

using namespace subnyq;

namespace
{
    constexpr double kFnyq = 10e9;
    constexpr double kB = 50e6;
    const model::ArrayGeometry kUla{model::ArrayKind::Ula, 4, 0.03, kSpeedOfLight};

    model::SignalScene grid_scene(int m, std::uint64_t seed, const frontend::FrontEndConfig &cfg)
    {
        const auto grid = frontend::SimGrid::make(cfg, kFnyq);
        return model::draw_scene(m, kFnyq, kB, model::SceneModel::m1(0.0), seed, grid.bin_hz);
    }

    frontend::FrontEndConfig ratio_cfg(double fp_over_b, double fs_over_fp, int q)
    {
        frontend::FrontEndConfig cfg;
        cfg.f_p = fp_over_b * kB;
        cfg.f_s = fs_over_fp * cfg.f_p;
        cfg.q_snapshots = q;
        return cfg;
    }
}

TEST_CASE("invert_steering recovers the aliased baseband exactly")
{
    const frontend::FrontEndConfig cfg = ratio_cfg(1.3, 1.0, 200);
    const auto scene = grid_scene(3, 2, cfg);
    const auto s = frontend::sample(scene, kUla, cfg, frontend::kNoiseless, 1);
    const CMat w = frontend::alias_baseband(scene, cfg);
    const CMat w_hat = recon::invert_steering(s, scene.carriers(), scene.aoas());
    CHECK((w_hat - w).norm() < 1e-9 * w.norm());
}

TEST_CASE("invert_steering on a square DFT-like steering matrix equals A^H / N")
{
    const int n = 4;
    std::vector<double> f;
    const double step = kSpeedOfLight / (0.03 * n); // phase step 2 pi / n
    for (int i = 0; i < n; ++i)
        f.push_back((i - n / 2) * step);
    const CMat a = frontend::steering_columns(f, std::vector<double>(n, 0.0), n, 0.03, kSpeedOfLight,
                                              frontend::Axis::X);
    const CMat y = oracle::random_matrix(n, 3, 5);
    CHECK((recon::invert_steering(y, a) - a.adjoint() * y / static_cast<double>(n)).norm() < 1e-12);
    CHECK(recon::invert_steering(CMat::Zero(n, 3), a).norm() == 0.0);
}

TEST_CASE("invert_steering rejects duplicate carriers and names the pair")
{
    const CMat a = frontend::steering_columns({1e9, 1e9, 2e9}, {0, 0, 0}, 4, 0.03, kSpeedOfLight, frontend::Axis::X);
    try
    {
        recon::invert_steering(CMat::Ones(4, 2), a);
        FAIL("expected RankDeficientError");
    }
    catch (const RankDeficientError &e)
    {
        CHECK(std::string(e.what()).find("(0, 1)") != std::string::npos);
    }
    const CMat wide = frontend::steering_columns({1e9, 2e9, 3e9}, {0, 0, 0}, 2, 0.03, kSpeedOfLight,
                                                 frontend::Axis::X);
    CHECK_THROWS_AS(recon::invert_steering(CMat::Ones(2, 2), wide), InsufficientSensorsError);
}

TEST_CASE("unfold at a zero carrier under a Dirac comb reads the baseband bins")
{
    const frontend::FrontEndConfig cfg = ratio_cfg(1.3, 1.0, 200);
    const auto grid = frontend::SimGrid::make(cfg, kFnyq);
    const auto band = model::gen_band_spectrum(kB, grid.bin_hz, 3);
    const auto s = recon::unfold_spectrum(band.samples(grid.q), 0.0, cfg, kB, kFnyq);
    CHECK(s.first_bin == band.first_bin);
    CHECK(s.values.size() == band.values.size());
    CHECK((s.values - band.values).norm() < 1e-12);
}

TEST_CASE("unfold round trip for a carrier whose band straddles two alias slices")
{
    const frontend::FrontEndConfig cfg = ratio_cfg(1.3, 1.0, 200);
    const auto grid = frontend::SimGrid::make(cfg, kFnyq);
    model::SignalScene scene;
    scene.f_nyq_hz = kFnyq;
    scene.bandwidth_hz = kB;
    const double f = 2.5 * cfg.f_p; // on a slice boundary
    scene.transmissions.push_back({f, 0.0, kB, 4, 1.0});
    const CMat w = frontend::alias_baseband(scene, cfg);
    const auto s = recon::unfold_spectrum(w.row(0).transpose(), f, cfg, kB, kFnyq);
    CHECK(recon::alias_index(s.first_bin, grid.p) == 2);
    CHECK(recon::alias_index(s.last_bin(), grid.p) == 3);
    const auto truth = frontend::baseband_spectra(scene, grid)[0];
    for (long long b = truth.first_bin; b <= truth.last_bin(); ++b)
        CHECK(std::abs(s.at(truth.carrier_bin + b) - truth.at(b)) < 1e-12);
}

TEST_CASE("f_p below B corrupts only the band edges")
{
    const frontend::FrontEndConfig cfg = ratio_cfg(0.8, 1.0, 200);
    const auto grid = frontend::SimGrid::make(cfg, kFnyq);
    model::SignalScene scene;
    scene.f_nyq_hz = kFnyq;
    scene.bandwidth_hz = kB;
    scene.transmissions.push_back({0.0, 0.0, kB, 6, 1.0});
    const CMat w = frontend::alias_baseband(scene, cfg);
    const auto s = recon::unfold_spectrum(w.row(0).transpose(), 0.0, cfg, kB, kFnyq);
    const auto truth = frontend::baseband_spectra(scene, grid)[0];
    const double overlap = frontend::alias_overlap(cfg, kB);
    double centre_err = 0.0, edge_err = 0.0;
    for (long long b = truth.first_bin; b <= truth.last_bin(); ++b)
    {
        const double f = static_cast<double>(b) * grid.bin_hz;
        const double e = std::norm(s.at(b) - truth.at(b));
        (std::abs(f) < 0.5 * kB - overlap ? centre_err : edge_err) += e;
    }
    CHECK(centre_err < 1e-24);
    CHECK(edge_err > 1e-3);
}

TEST_CASE("assemble places a zero-carrier band unchanged")
{
    const frontend::FrontEndConfig cfg = ratio_cfg(1.3, 1.0, 200);
    const auto grid = frontend::SimGrid::make(cfg, kFnyq);
    const auto band = model::gen_band_spectrum(kB, grid.bin_hz, 8);
    const auto u = recon::assemble({band}, cfg, kFnyq);
    CHECK(u.energy() == doctest::Approx(band.power()));
    CHECK(u.at(1) == band.at(1));
    CHECK(recon::assemble({}, cfg, kFnyq).energy() == 0.0);
}

TEST_CASE("noiseless pipeline: ESPRIT carriers reconstruct the multiband signal")
{
    const frontend::FrontEndConfig cfg = ratio_cfg(1.3, 1.0, 200);
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
        const auto scene = grid_scene(3, seed, cfg);
        const auto s = frontend::sample(scene, kUla, cfg, frontend::kNoiseless, seed);
        const auto f = esprit::esprit_1d(esprit::covariance(s), 3, 0.03, kSpeedOfLight, 0.0);
        const auto rec = recon::reconstruct_array(s, f, std::vector<double>(3, 0.0), cfg, kB, kFnyq);
        CHECK(recon::carrier_error(scene.carriers(), f, kFnyq) < 1e-9);
        CHECK(recon::mse_norm(frontend::render_truth(scene, cfg), rec.u_hat) < 1e-8);
        CHECK(recon::band_mse(scene, cfg, rec.s_hat, f) < 1e-8);
    }
}

TEST_CASE("carrier-only regime: f_s < f_p keeps the carriers but not the waveform")
{
    const frontend::FrontEndConfig cfg = ratio_cfg(1.3, 0.2, 400);
    const auto scene = grid_scene(2, 3, cfg);
    const model::ArrayGeometry g{model::ArrayKind::Ula, 8, 0.03, kSpeedOfLight};
    const auto s = frontend::sample(scene, g, cfg, frontend::kNoiseless, 1);
    const auto f = esprit::esprit_1d(esprit::covariance(s), 2, 0.03, kSpeedOfLight, 0.0);
    CHECK(recon::carrier_error(scene.carriers(), f, kFnyq) < 1e-9);
    const auto rec = recon::reconstruct_array(s, f, {0.0, 0.0}, cfg, kB, kFnyq);
    CHECK(recon::mse_norm(frontend::render_truth(scene, cfg), rec.u_hat) > 1e-3);
}

TEST_CASE("MWC baseline reconstructs noiseless scenes")
{
    frontend::FrontEndConfig cfg = ratio_cfg(1.3, 1.0, 200);
    cfg.mixing = frontend::MixingSpec::sign_sequence(5);
    const auto scene = grid_scene(2, 4, cfg);
    const model::ArrayGeometry g{model::ArrayKind::MwcSingleSensor, 10, 0.03, kSpeedOfLight};
    const auto s = frontend::sample(scene, g, cfg, frontend::kNoiseless, 1);
    const auto rec = recon::reconstruct_mwc(s, cfg, 4, kFnyq);
    CHECK(recon::mse_norm(frontend::render_truth(scene, cfg), rec.u_hat) < 1e-8);
}

TEST_CASE("metrics")
{
    const std::vector<double> truth = {-1e9, 2e9};
    CHECK(recon::carrier_error(truth, truth, kFnyq) == 0.0);
    CHECK(recon::carrier_error(truth, {2e9 + kFnyq / 100.0, -1e9}, kFnyq) == doctest::Approx(0.005));
    CHECK(recon::carrier_error(truth, {2e9}, kFnyq) == doctest::Approx(0.5));
    CHECK(recon::carrier_error(truth, {}, kFnyq) == doctest::Approx(1.0));
    CHECK(recon::carrier_error({}, {1e9}, kFnyq) == 0.0);

    const auto je = recon::joint_error({1e9, -2e9}, {0.1, -0.4}, {-2e9, 1e9 + 1e7}, {-0.4, 0.1 + 0.01 * kPi}, kFnyq);
    CHECK(je.carrier_err == doctest::Approx(0.0005));
    CHECK(je.aoa_err == doctest::Approx(0.005));

    auto u = model::NyquistSignal::zeros(1.0, 8);
    u.at(1) = 2.0;
    auto v = u;
    CHECK(recon::mse_norm(u, v) == 0.0);
    v.at(1) = 1.0;
    CHECK(recon::mse_norm(u, v) == doctest::Approx(0.25));
}

TEST_CASE("carrier_error is invariant to estimate order and reaches the brute-force optimum")
{
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(-4e9, 4e9);
    for (int t = 0; t < 10; ++t)
    {
        std::vector<double> a(4), b(4);
        for (int i = 0; i < 4; ++i)
        {
            a[i] = u(rng);
            b[i] = u(rng);
        }
        RMat cost(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                cost(i, j) = std::min(1.0, std::abs(a[i] - b[j]) / kFnyq);
        const double e = recon::carrier_error(a, b, kFnyq);
        CHECK(e == doctest::Approx(oracle::best_assignment_cost(cost) / 4.0));
        std::reverse(b.begin(), b.end());
        CHECK(recon::carrier_error(a, b, kFnyq) == doctest::Approx(e));
    }
}
