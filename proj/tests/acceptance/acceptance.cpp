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

// Acceptance run: one PASS/FAIL line per criterion, each with its wall time
// against the budget. Exit status is zero when the failing set equals the
// one passed with --expect-fail (empty by default).

#include "../oracles.hpp"
#include "subnyq/cascade.hpp"
#include "subnyq/error.hpp"
#include "subnyq/esprit.hpp"
#include "subnyq/harness.hpp"
#include "subnyq/io.hpp"
#include "subnyq/kernels.hpp"
#include "subnyq/recon.hpp"
#include "subnyq/sparse.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#ifndef SUBNYQ_CONFIG_DIR
#define SUBNYQ_CONFIG_DIR "configs"
#endif

using namespace subnyq;

namespace
{
    constexpr double kFnyq = 10e9;
    constexpr double kB = 50e6;
    constexpr double kC = kSpeedOfLight;

    struct Verdict
    {
        bool pass = false;
        std::string detail;
    };

    std::string config_dir = SUBNYQ_CONFIG_DIR;
    std::map<std::string, std::string> first_csv; // preset name -> CSV of its first run

    std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
    {
        char buf[256];
        std::snprintf(buf, sizeof buf, f, a, b, c, d);
        return buf;
    }

    harness::ExperimentConfig preset(const std::string &name)
    {
        auto c = harness::ExperimentConfig::from_json(io::read_json(config_dir + "/" + name + ".json"));
        c.validate();
        return c;
    }

    std::vector<harness::ResultRow> run_preset(const std::string &name)
    {
        const auto rows = harness::run(preset(name));
        first_csv.emplace(name, harness::to_csv(rows));
        return rows;
    }

    const harness::ResultRow &row(const std::vector<harness::ResultRow> &rows, double value, const std::string &alg)
    {
        for (const auto &r : rows)
            if (std::abs(r.sweep_value - value) < 1e-12 && r.algorithm == alg)
                return r;
        throw Error("acceptance: no row for " + alg);
    }

    frontend::FrontEndConfig dirac_cfg(double f_p, double f_s, int q)
    {
        frontend::FrontEndConfig cfg;
        cfg.f_p = f_p;
        cfg.f_s = f_s;
        cfg.q_snapshots = q;
        cfg.mixing = frontend::MixingSpec::dirac();
        return cfg;
    }

    // Largest |f - f_hat| / |f| after sorting both (absolute / B for a zero carrier).
    double max_relative_carrier_error(std::vector<double> truth, std::vector<double> est)
    {
        if (truth.size() != est.size())
            return std::numeric_limits<double>::infinity();
        std::sort(truth.begin(), truth.end());
        std::sort(est.begin(), est.end());
        double worst = 0.0;
        for (std::size_t i = 0; i < truth.size(); ++i)
        {
            const double scale = truth[i] != 0.0 ? std::abs(truth[i]) : kB;
            worst = std::max(worst, std::abs(truth[i] - est[i]) / scale);
        }
        return worst;
    }

    Verdict c1_noiseless_exact()
    {
        const auto cfg = dirac_cfg(1.3 * kB, 1.3 * kB, 200);
        const auto grid = frontend::SimGrid::make(cfg, kFnyq);
        const model::ArrayGeometry ula{model::ArrayKind::Ula, 4, 0.03, kC};
        double worst_f = 0.0, worst_mse = 0.0;
        for (int t = 0; t < 50; ++t)
        {
            const auto scene = model::draw_scene(3, kFnyq, kB, model::SceneModel::m1(0.0), 1000 + t, grid.bin_hz);
            const auto s = frontend::sample(scene, ula, cfg, frontend::kNoiseless, t);
            if (oracle::rank(frontend::alias_baseband(scene, cfg)) != 3)
                return {false, "trial " + std::to_string(t) + " has dim span(w) < M"};
            const auto f = esprit::esprit_1d(esprit::covariance(s), 3, 0.03, kC, 0.0);
            const auto rec = recon::reconstruct_array(s, f, {0.0, 0.0, 0.0}, cfg, kB, kFnyq);
            worst_f = std::max(worst_f, max_relative_carrier_error(scene.carriers(), f));
            worst_mse = std::max(worst_mse, recon::mse_norm(frontend::render_truth(scene, cfg), rec.u_hat));
        }
        return {worst_f < 1e-6 && worst_mse < 1e-8,
                fmt("50 trials, max carrier rel err %.2e, max MSE %.2e", worst_f, worst_mse)};
    }

    // Number of 2-column supports explaining y exactly, by exhaustive search.
    int exact_supports(const CVec &y, const CMat &dict, std::vector<int> *first = nullptr)
    {
        int count = 0;
        oracle::for_each_subset(static_cast<int>(dict.cols()), 2, [&](const std::vector<int> &idx) {
            const CMat sub = oracle::columns(dict, idx);
            const CVec coef = sub.colPivHouseholderQr().solve(y);
            if ((y - sub * coef).norm() < 1e-9 * y.norm())
            {
                if (count == 0 && first)
                    *first = idx;
                ++count;
            }
        });
        return count;
    }

    Verdict c2_sensor_bound()
    {
        const double delta = kFnyq / 16.0;
        const double d = 0.029;
        std::mt19937 rng(7);
        std::normal_distribution<double> g;

        // N = 2M = 4: every coherent 2-sparse instance has a unique support, and
        // smoothed ESPRIT recovers it from the single rank-one snapshot.
        const auto dict4 = sparse::build_grid_1d(4, delta, kFnyq, d, kC, 0.0);
        int unique = 0, total = 0, esprit_ok = 0;
        oracle::for_each_subset(static_cast<int>(dict4.size()), 2, [&](const std::vector<int> &truth) {
            const CVec x = (CVec(2) << cplx(g(rng), g(rng)), cplx(g(rng), g(rng))).finished();
            const CVec y = oracle::columns(dict4.g, truth) * x;
            std::vector<int> found;
            ++total;
            if (exact_supports(y, dict4.g, &found) == 1 && found == truth)
                ++unique;
            const std::vector<double> f = {dict4.atoms[truth[0]].alpha, dict4.atoms[truth[1]].alpha};
            try
            {
                const auto est = esprit::esprit_1d(esprit::smooth_covariance(CMat(y), 2), 2, d, kC, 0.0);
                if (max_relative_carrier_error(f, est) < 1e-6)
                    ++esprit_ok;
            }
            catch (const Error &)
            {
            }
        });

        // N = 3 < 2M: any four columns are dependent, so a null vector splits
        // into two different 2-sparse explanations of one measurement.
        const auto dict3 = sparse::build_grid_1d(3, delta, kFnyq, d, kC, 0.0);
        const std::vector<int> quad = {2, 5, 9, 13};
        const CMat sub = oracle::columns(dict3.g, quad);
        Eigen::FullPivLU<CMat> lu(sub);
        const CVec null = lu.kernel().col(0);
        const CVec y = sub.leftCols(2) * null.head(2);
        const int ambiguous = exact_supports(y, dict3.g);

        const bool pass = unique == total && esprit_ok == total && ambiguous >= 2;
        return {pass, fmt("N=4: %.0f/%.0f instances with a unique support, smoothed ESPRIT exact in %.0f/%.0f",
                          unique, total, esprit_ok, total) +
                          fmt("; N=3: %.0f distinct 2-sparse supports explain one measurement", ambiguous)};
    }

    Verdict c3_smoothing_rescue()
    {
        const auto cfg = dirac_cfg(65e6, 65e6, 2);
        const auto grid = frontend::SimGrid::make(cfg, kFnyq);
        const model::ArrayGeometry ula{model::ArrayKind::Ula, 10, 0.03, kC};
        int plain_rejected = 0, smoothed_ok = 0;
        const int trials = 20;
        double worst = 0.0;
        for (int t = 0; t < trials; ++t)
        {
            const auto scene = model::draw_scene(4, kFnyq, kB, model::SceneModel::m1(0.0), 300 + t, grid.bin_hz);
            const auto s = frontend::sample(scene, ula, cfg, frontend::kNoiseless, t);
            try
            {
                esprit::esprit_1d(esprit::covariance(s), 4, 0.03, kC, 0.0);
            }
            catch (const RankDeficientError &)
            {
                ++plain_rejected;
            }
            const auto f = esprit::esprit_1d(esprit::smooth_covariance(s, 4), 4, 0.03, kC, 0.0);
            const double e = max_relative_carrier_error(scene.carriers(), f);
            worst = std::max(worst, e);
            if (e < 1e-6)
                ++smoothed_ok;
        }
        return {plain_rejected == trials && smoothed_ok == trials,
                fmt("M=4 Q=2: plain ESPRIT rejected %.0f/%.0f, smoothed recovered %.0f/%.0f", plain_rejected, trials,
                    smoothed_ok, trials) +
                    fmt(" (max rel err %.2e)", worst)};
    }

    Verdict c4_d_threshold()
    {
        const auto rows = run_preset("d_sweep");
        const auto &a = row(rows, 0.03, "esprit");
        const auto &b = row(rows, 0.04, "esprit");
        return {b.mean_mse >= 2.0 * a.mean_mse,
                fmt("mean MSE d=0.03: %.4f, d=0.04: %.4f, ratio %.2f", a.mean_mse, b.mean_mse,
                    b.mean_mse / a.mean_mse)};
    }

    Verdict c5_fp_cliff()
    {
        const auto rows = run_preset("fp_over_b");
        const auto &lo = row(rows, 0.4, "esprit");
        const auto &hi = row(rows, 1.3, "esprit");
        return {lo.mean_mse >= 0.5 && hi.mean_mse < 1e-6,
                fmt("mean MSE f_p/B=0.4: %.3f, f_p/B=1.3: %.2e", lo.mean_mse, hi.mean_mse)};
    }

    Verdict c6_carrier_only()
    {
        const auto rows = run_preset("fs_over_fp");
        const auto &r = row(rows, 0.2, "esprit_smoothed");
        return {r.mean_carrier_err < 0.01,
                fmt("f_s/f_p=0.2 smoothed ESPRIT mean carrier_err %.4f (target < 0.01), failures %.0f",
                    r.mean_carrier_err, r.failures)};
    }

    Verdict c7_ula_vs_mwc()
    {
        auto c = preset("ula_vs_mwc");
        c.sweep_values = {0.0};
        const auto &algs = c.algorithms;
        const auto ula = std::find(algs.begin(), algs.end(), harness::Algorithm::Esprit) - algs.begin();
        const auto mwc = std::find(algs.begin(), algs.end(), harness::Algorithm::MwcBaseline) - algs.begin();
        const harness::SweepPoint point(c, 0);
        int wins = 0;
        double ula_sum = 0.0, mwc_sum = 0.0;
        int ula_n = 0, mwc_n = 0;
        for (int t = 0; t < c.trials; ++t)
        {
            const auto out = point.run_trial(t);
            const auto &u = out.per_algorithm[ula];
            const auto &m = out.per_algorithm[mwc];
            if (u.ok && (!m.ok || u.mse < m.mse))
                ++wins;
            if (u.ok)
                ula_sum += u.mse, ++ula_n;
            if (m.ok)
                mwc_sum += m.mse, ++mwc_n;
        }
        return {wins >= 80, fmt("SNR 0 dB: ULA wins %.0f/%.0f trials (mean MSE ULA %.3f, MWC %.3f)", wins, c.trials,
                                ula_sum / std::max(1, ula_n), mwc_sum / std::max(1, mwc_n))};
    }

    Verdict c8_joint_exact()
    {
        const double d = 0.029;
        const int n = 3;
        double worst_f = 0.0, worst_th = 0.0;
        int paired = 0;
        for (int t = 0; t < 100; ++t)
        {
            const auto scene = model::draw_scene(2, kFnyq, kB, model::SceneModel::m2(), 500 + t);
            const auto f = scene.carriers();
            const auto th = scene.aoas();
            const CMat ax = frontend::steering_columns(f, th, n, d, kC, frontend::Axis::X);
            const CMat az = frontend::steering_columns(f, th, n, d, kC, frontend::Axis::Z);
            const auto est = cascade::joint_esprit(cascade::expected_cross_covariances(ax, az, CMat::Identity(2, 2)),
                                                   2, d, kC);
            bool ok = est.pairs.size() == 2;
            for (int i = 0; i < 2 && ok; ++i)
            {
                // The estimate nearest in carrier must also carry the matching angle.
                int best = 0;
                for (int j = 1; j < 2; ++j)
                    if (std::abs(est.pairs[j].first - f[i]) < std::abs(est.pairs[best].first - f[i]))
                        best = j;
                const double ef = std::abs(est.pairs[best].first - f[i]) / std::abs(f[i]);
                const double et = std::abs(est.pairs[best].second - th[i]);
                worst_f = std::max(worst_f, ef);
                worst_th = std::max(worst_th, et);
                ok = ef < 1e-9 && et < 1e-9;
            }
            if (ok)
                ++paired;
        }
        return {paired == 100, fmt("%.0f/100 scenes paired correctly, max carrier rel err %.2e, max angle err %.2e rad",
                                   paired, worst_f, worst_th)};
    }

    bool non_increasing(const std::vector<double> &v)
    {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] > 1.1 * v[i - 1])
                return false;
        return true;
    }

    std::string series(const std::vector<double> &v)
    {
        std::string s;
        for (double x : v)
            s += (s.empty() ? "" : " > ") + fmt("%.4f", x);
        return s;
    }

    Verdict c9_joint_trends()
    {
        bool pass = true;
        std::string detail;
        for (const auto &[name, values] : std::vector<std::pair<std::string, std::vector<double>>>{
                 {"joint_sensors", {7, 9, 11}}, {"joint_snr", {0, 10, 20}}})
        {
            const auto rows = run_preset(name);
            std::vector<double> cf, ca;
            for (double v : values)
            {
                const auto &r = row(rows, v, "joint_esprit");
                cf.push_back(r.mean_carrier_err);
                ca.push_back(r.mean_aoa_err);
            }
            pass = pass && non_increasing(cf) && non_increasing(ca);
            detail += (detail.empty() ? "" : "; ") + name + " carrier " + series(cf) + ", aoa " + series(ca);
        }
        return {pass, detail};
    }

    // Model scenes snapped to a joint grid; returns how many OMP recovers exactly.
    std::pair<int, int> krao_omp_rate(double delta, int scenes)
    {
        const double d = 0.029;
        const int n = 4; // 2N - 1 = 7 sensors
        const auto dict = sparse::build_grid_joint(n, delta, kFnyq, d, kC);
        const CMat kr = sparse::krao_dictionary(dict);
        std::map<std::pair<int, int>, int> index;
        for (std::size_t i = 0; i < dict.atoms.size(); ++i)
            index[{dict.atoms[i].l1, dict.atoms[i].l2}] = static_cast<int>(i);
        int recovered = 0, used = 0;
        for (int t = 0; used < scenes; ++t)
        {
            const auto scene = model::draw_scene(2, kFnyq, kB, model::SceneModel::m2(), 700 + t);
            std::vector<int> truth;
            for (const auto &tx : scene.transmissions)
            {
                const int l1 = static_cast<int>(std::lround(tx.carrier_hz * std::cos(tx.aoa_rad) / delta));
                const int l2 = static_cast<int>(std::lround(tx.carrier_hz * std::sin(tx.aoa_rad) / delta));
                const auto it = index.find({l1, l2});
                if (it != index.end())
                    truth.push_back(it->second);
            }
            std::sort(truth.begin(), truth.end());
            if (truth.size() != 2 || truth[0] == truth[1])
                continue; // both transmissions snap to one atom
            ++used;
            const CMat g = oracle::columns(dict.g, truth);
            const esprit::CovarianceMatrix r{g * g.adjoint(), 1, 1};
            const CVec y = sparse::vec(r.r);
            if (sparse::omp(y, kr, 2).indices == truth)
                ++recovered;
        }
        return {recovered, used};
    }

    Verdict c10_krao_cs()
    {
        // vec(G diag(r) G^H) = (conj(G) (.) G) r on constructed nonnegative r.
        const auto dict = sparse::build_grid_joint(4, kFnyq / 64.0, kFnyq, 0.029, kC);
        const CMat kr = sparse::krao_dictionary(dict);
        std::mt19937 rng(10);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(dict.size()) - 1);
        double worst_identity = 0.0;
        for (int t = 0; t < 20; ++t)
        {
            RVec p = RVec::Zero(dict.size());
            for (int k = 0; k < 3; ++k)
                p(pick(rng)) += 0.5 + k;
            const CMat rr = dict.g * p.cast<cplx>().asDiagonal() * dict.g.adjoint();
            worst_identity = std::max(worst_identity, (sparse::vec(rr) - kr * p.cast<cplx>()).norm() / rr.norm());
        }

        // Default joint grid (f_nyq / 64) decides the verdict; the coarse grid is reported for context.
        const auto [ok, total] = krao_omp_rate(kFnyq / 64.0, 100);
        const auto [ok_coarse, total_coarse] = krao_omp_rate(kFnyq / 8.0, 100);
        return {ok == total && worst_identity < 1e-12,
                fmt("vec identity rel residual %.1e; OMP exact support %.0f/%.0f scenes on the f_nyq/64 grid",
                    worst_identity, ok, total) +
                    fmt(" (%.0f/%.0f on an f_nyq/8 grid)", ok_coarse, total_coarse)};
    }

    Verdict c11_determinism()
    {
        bool pass = true;
        std::string detail;
        for (const std::string name : {"fp_over_b", "joint_snr"})
        {
            const auto c = preset(name);
            const std::string again = harness::to_csv(harness::run(c, 2));
            const std::string serial = harness::to_csv(harness::run_serial(c));
            const auto it = first_csv.find(name);
            const std::string first = it != first_csv.end() ? it->second : harness::to_csv(harness::run(c));
            const bool same = again == first && serial == first;
            pass = pass && same;
            detail += (detail.empty() ? "" : ", ") + name + (same ? " identical" : " DIFFERS");
        }
        return {pass, detail + " across reruns and thread counts"};
    }

    struct Criterion
    {
        int id;
        const char *title;
        double budget_s;
        std::function<Verdict()> run;
    };
}

int main(int argc, char **argv)
{
    CLI::App app{"acceptance criteria"};
    std::vector<int> expect_fail;
    std::vector<int> only;
    app.add_option("--configs", config_dir, "preset directory");
    app.add_option("--expect-fail", expect_fail, "criteria known to fail; exit status ignores them");
    app.add_option("--only", only, "run a subset of criteria");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria = {
        {1, "noiseless exact recovery", 10, c1_noiseless_exact},
        {2, "worst-case sensor bound", 5, c2_sensor_bound},
        {3, "spatial smoothing rescue", 5, c3_smoothing_rescue},
        {4, "d threshold trend", 120, c4_d_threshold},
        {5, "f_p/B cliff", 60, c5_fp_cliff},
        {6, "carrier-only sub-rate", 120, c6_carrier_only},
        {7, "ULA vs MWC at 0 dB", 180, c7_ula_vs_mwc},
        {8, "joint noiseless exactness", 5, c8_joint_exact},
        {9, "joint finite-Q trends", 300, c9_joint_trends},
        {10, "Khatri-Rao CS joint recovery", 5, c10_krao_cs},
        {11, "determinism", 120, c11_determinism},
    };

    std::set<int> failed;
    for (const auto &c : criteria)
    {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end())
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try
        {
            v = c.run();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget_s;
        const bool pass = v.pass && in_time;
        if (!pass)
            failed.insert(c.id);
        std::printf("criterion %2d %s  %-30s %7.2f s / %3.0f s  %s%s\n", c.id, pass ? "PASS" : "FAIL", c.title, secs,
                    c.budget_s, v.detail.c_str(), in_time ? "" : " (over time budget)");
        std::fflush(stdout);
    }

    std::set<int> expected;
    for (int id : expect_fail)
        if (only.empty() || std::find(only.begin(), only.end(), id) != only.end())
            expected.insert(id);
    std::printf("%zu criteria failed", failed.size());
    if (!expected.empty())
    {
        std::printf(" (expected to fail:");
        for (int id : expected)
            std::printf(" %d", id);
        std::printf(")");
    }
    std::printf("\n");
    return failed == expected ? 0 : 1;
}
