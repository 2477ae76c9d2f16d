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

#include "subnyq/cascade.hpp"
#include "subnyq/error.hpp"
#include "subnyq/esprit.hpp"
#include "subnyq/harness.hpp"
#include "subnyq/io.hpp"
#include "subnyq/linalg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

using namespace subnyq;

namespace
{
    void print_scene(const model::SignalScene &scene)
    {
        std::printf("scene: %s, f_nyq %.4g Hz, B %.4g Hz, %d transmissions\n", model::to_string(scene.model.cls).c_str(),
                    scene.f_nyq_hz, scene.bandwidth_hz, scene.size());
        for (const auto &t : scene.transmissions)
            std::printf("  carrier %+14.6f MHz  aoa %+8.3f deg\n", t.carrier_hz / 1e6, rad_to_deg(t.aoa_rad));
    }

    void print_estimates(const char *tag, const std::vector<double> &f, const std::vector<double> &th)
    {
        std::printf("%s:\n", tag);
        for (std::size_t i = 0; i < f.size(); ++i)
        {
            if (i < th.size())
                std::printf("  carrier %+14.6f MHz  aoa %+8.3f deg\n", f[i] / 1e6, rad_to_deg(th[i]));
            else
                std::printf("  carrier %+14.6f MHz\n", f[i] / 1e6);
        }
    }

    void export_trial(const std::string &dir, const model::SignalScene &scene, const frontend::SampleSet &samples,
                      const recon::Reconstruction *rec)
    {
        std::filesystem::create_directories(dir);
        const std::filesystem::path base(dir);
        io::write_scene((base / "scene.json").string(), scene);
        io::write_samples((base / "samples").string(), samples);
        if (rec)
            io::write_reconstruction((base / "reconstruction").string(), *rec, samples.f_s, samples.geometry);
        std::printf("wrote scene.json, samples.{bin,json}%s to %s\n", rec ? ", reconstruction*.{bin,json}" : "",
                    dir.c_str());
    }

    int demo(const std::string &scenario, std::uint64_t seed, double snr_db, const std::string &export_dir)
    {
        harness::FixedParams p;
        frontend::FrontEndConfig cfg;
        cfg.f_p = p.f_p;
        cfg.f_s = p.f_s;
        cfg.q_snapshots = p.q;
        const frontend::SimGrid grid = frontend::SimGrid::make(cfg, p.f_nyq);
        const std::uint64_t noise_seed = linalg::derive_seed(seed, 2);

        std::printf("front end: f_p %.4g Hz, f_s %.4g Hz, Q %d, L0 %d, SNR %g dB\n", cfg.f_p, cfg.f_s, cfg.q_snapshots,
                    grid.l0, snr_db);

        if (scenario == "ula")
        {
            const auto scene = model::draw_scene(p.m, p.f_nyq, p.b, model::SceneModel::m1(p.theta),
                                                 linalg::derive_seed(seed, 1), grid.bin_hz);
            print_scene(scene);
            const model::ArrayGeometry g{model::ArrayKind::Ula, p.n, p.d, p.c};
            const auto samples = frontend::sample(scene, g, cfg, snr_db, noise_seed);
            std::printf("ULA: N %d, d %g m, samples %ldx%ld\n", p.n, p.d, static_cast<long>(samples.x.rows()),
                        static_cast<long>(samples.x.cols()));
            const auto r = esprit::covariance(samples);
            const auto ev = esprit::eigenvalues_desc(r);
            std::printf("MDL order estimate: %d (true %d)\n", esprit::mdl_order(ev, r.n_snapshots), p.m);
            const auto f = esprit::esprit_1d(r, p.m, p.d, p.c, p.theta);
            print_estimates("ESPRIT estimates", f, {});
            const auto rec =
                recon::reconstruct_array(samples, f, std::vector<double>(f.size(), p.theta), cfg, p.b, p.f_nyq);
            const auto truth = frontend::render_truth(scene, cfg);
            std::printf("carrier_err %.3e  mse %.3e\n", recon::carrier_error(scene.carriers(), f, p.f_nyq),
                        recon::mse_norm(truth, rec.u_hat));
            if (!export_dir.empty())
                export_trial(export_dir, scene, samples, &rec);
            return 0;
        }
        if (scenario == "cascade")
        {
            const int n = 6;
            const double d = 0.029;
            const auto scene =
                model::draw_scene(p.m, p.f_nyq, p.b, model::SceneModel::m2(), linalg::derive_seed(seed, 1), grid.bin_hz);
            print_scene(scene);
            const model::ArrayGeometry g{model::ArrayKind::LShape, n, d, p.c};
            const auto samples = frontend::sample(scene, g, cfg, snr_db, noise_seed);
            std::printf("L-shape: N %d per axis (%d sensors), d %g m\n", n, g.total_sensors(), d);
            const auto est = cascade::joint_esprit(cascade::cross_covariances(samples), p.m, d, p.c);
            print_estimates("joint ESPRIT estimates", est.carriers(), est.aoas());
            for (const auto &w : est.warnings)
                std::printf("warning: %s\n", w.c_str());
            const auto e = recon::joint_error(scene.carriers(), scene.aoas(), est.carriers(), est.aoas(), p.f_nyq);
            const auto rec = recon::reconstruct_array(samples, est.carriers(), est.aoas(), cfg, p.b, p.f_nyq);
            const auto truth = frontend::render_truth(scene, cfg);
            std::printf("carrier_err %.3e  aoa_err %.3e  mse %.3e\n", e.carrier_err, e.aoa_err,
                        recon::mse_norm(truth, rec.u_hat));
            if (!export_dir.empty())
                export_trial(export_dir, scene, samples, &rec);
            return 0;
        }
        if (scenario == "mwc")
        {
            frontend::FrontEndConfig mcfg = cfg;
            mcfg.mixing = frontend::MixingSpec::sign_sequence(linalg::derive_seed(seed, 0x3c3));
            const auto scene = model::draw_scene(p.m, p.f_nyq, p.b, model::SceneModel::m1(p.theta),
                                                 linalg::derive_seed(seed, 1), grid.bin_hz);
            print_scene(scene);
            const model::ArrayGeometry g{model::ArrayKind::MwcSingleSensor, p.n, p.d, p.c};
            const auto samples = frontend::sample(scene, g, mcfg, snr_db, noise_seed);
            std::printf("MWC: %d channels, %d-chip sign sequences\n", p.n, 2 * grid.l0 + 1);
            const auto rec = recon::reconstruct_mwc(samples, mcfg, 2 * p.m, p.f_nyq);
            const auto truth = frontend::render_truth(scene, mcfg);
            std::printf("mse %.3e\n", recon::mse_norm(truth, rec.u_hat));
            if (!export_dir.empty())
                export_trial(export_dir, scene, samples, &rec);
            return 0;
        }
        std::fprintf(stderr, "unknown scenario '%s'\n", scenario.c_str());
        return 2;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Sub-Nyquist carrier and DOA estimation experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir, formats = "csv,svg";
    bool paper_scale = false;
    int threads = 0;
    auto *run = app.add_subcommand("run", "Run a Monte-Carlo sweep from a JSON config");
    run->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "Output directory")->required();
    run->add_option("--format", formats, "Comma separated list of csv, svg");
    run->add_flag("--paper-scale", paper_scale, "Use 2000 trials and Q = 400");
    run->add_option("--threads", threads, "Worker threads (default: OpenMP default)")->check(CLI::NonNegativeNumber);

    std::string scenario;
    std::uint64_t seed = 1;
    double snr_db = 20.0;
    std::string export_dir;
    auto *dm = app.add_subcommand("demo", "Print a one-trial trace");
    dm->add_option("--scenario", scenario, "ula, cascade or mwc")
        ->required()
        ->check(CLI::IsMember({"ula", "cascade", "mwc"}));
    dm->add_option("--seed", seed, "Scene and noise seed");
    dm->add_option("--snr", snr_db, "SNR in dB");
    dm->add_option("--export", export_dir, "Write scene, samples and reconstruction to this directory");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*dm)
            return demo(scenario, seed, snr_db, export_dir);

        bool csv = false, svg = false;
        std::stringstream fs(formats);
        std::string item;
        while (std::getline(fs, item, ','))
        {
            if (item == "csv")
                csv = true;
            else if (item == "svg")
                svg = true;
            else
                throw ConfigError("unknown format '" + item + "'");
        }
        auto config = harness::ExperimentConfig::from_json(io::read_json(config_path));
        if (paper_scale)
            config.apply_paper_scale();
        config.validate();
        std::fprintf(stderr, "running %s: %zu sweep values x %d trials x %zu algorithms\n", config.name.c_str(),
                     config.sweep_values.size(), config.trials, config.algorithms.size());
        const auto rows = harness::run(config, threads);
        for (const auto &path : harness::emit(rows, out_dir, config.name, csv, svg))
            std::printf("%s\n", path.c_str());
        return 0;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
