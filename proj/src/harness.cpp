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

#include "subnyq/harness.hpp"
#include "subnyq/cascade.hpp"
#include "subnyq/error.hpp"
#include "subnyq/io.hpp"
#include "subnyq/kernels.hpp"
#include "subnyq/linalg.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>

namespace subnyq::harness
{
    using nlohmann::json;

    namespace
    {
        const std::vector<std::pair<SweepVariable, std::string>> &sweep_names()
        {
            static const std::vector<std::pair<SweepVariable, std::string>> names = {
                {SweepVariable::D, "d"},         {SweepVariable::FpOverB, "fp_over_b"},
                {SweepVariable::NSensors, "n_sensors"}, {SweepVariable::Q, "q"},
                {SweepVariable::SnrDb, "snr_db"}, {SweepVariable::FsOverFp, "fs_over_fp"}};
            return names;
        }

        const std::vector<std::pair<Algorithm, std::string>> &algorithm_names()
        {
            static const std::vector<std::pair<Algorithm, std::string>> names = {
                {Algorithm::Esprit, "esprit"},           {Algorithm::EspritSmoothed, "esprit_smoothed"},
                {Algorithm::MmvCs, "mmv_cs"},            {Algorithm::JointEsprit, "joint_esprit"},
                {Algorithm::JointCs, "joint_cs"},        {Algorithm::MwcBaseline, "mwc_baseline"}};
            return names;
        }

        constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
    }

    std::string to_string(SweepVariable v)
    {
        for (const auto &[k, s] : sweep_names())
            if (k == v)
                return s;
        return "?";
    }

    std::string to_string(Algorithm a)
    {
        for (const auto &[k, s] : algorithm_names())
            if (k == a)
                return s;
        return "?";
    }

    SweepVariable sweep_variable_from_string(const std::string &s)
    {
        for (const auto &[k, name] : sweep_names())
            if (name == s)
                return k;
        throw ConfigError("unknown sweep variable '" + s + "'");
    }

    Algorithm algorithm_from_string(const std::string &s)
    {
        for (const auto &[k, name] : algorithm_names())
            if (name == s)
                return k;
        throw ConfigError("unknown algorithm '" + s + "'");
    }

    bool is_joint(Algorithm a) { return a == Algorithm::JointEsprit || a == Algorithm::JointCs; }

    bool ExperimentConfig::joint() const
    {
        return std::any_of(algorithms.begin(), algorithms.end(), is_joint);
    }

    FixedParams ExperimentConfig::at(std::size_t index) const
    {
        FixedParams p = fixed;
        const double v = sweep_values.at(index);
        switch (sweep_variable)
        {
        case SweepVariable::D:
            p.d = v;
            break;
        case SweepVariable::FpOverB:
        {
            const double ratio = fixed.f_s / fixed.f_p;
            p.f_p = v * fixed.b;
            p.f_s = ratio * p.f_p;
            break;
        }
        case SweepVariable::NSensors:
            p.n = joint() ? static_cast<int>(std::lround((v + 1.0) / 2.0)) : static_cast<int>(std::lround(v));
            break;
        case SweepVariable::Q:
            p.q = static_cast<int>(std::lround(v));
            break;
        case SweepVariable::SnrDb:
            p.snr_db = v;
            break;
        case SweepVariable::FsOverFp:
            p.f_s = v * fixed.f_p;
            break;
        }
        return p;
    }

    namespace
    {
        frontend::FrontEndConfig array_frontend(const FixedParams &p)
        {
            frontend::FrontEndConfig cfg;
            cfg.f_p = p.f_p;
            cfg.f_s = p.f_s;
            cfg.q_snapshots = p.q;
            cfg.mixing = frontend::MixingSpec::dirac();
            return cfg;
        }

        frontend::FrontEndConfig mwc_frontend(const FixedParams &p, std::uint64_t seed)
        {
            frontend::FrontEndConfig cfg = array_frontend(p);
            cfg.mixing = frontend::MixingSpec::sign_sequence(linalg::derive_seed(seed, 0x3c3));
            return cfg;
        }

        double parse_snr(const std::string &s)
        {
            if (s == "inf" || s == "+inf" || s == "noiseless")
                return std::numeric_limits<double>::infinity();
            throw ConfigError("config: snr must be a number or \"inf\"");
        }

        bool is_integer(double v) { return std::abs(v - std::round(v)) < 1e-9; }
    }

    void ExperimentConfig::validate() const
    {
        if (trials < 1)
            throw ConfigError("config: trials must be >= 1");
        if (sweep_values.empty())
            throw ConfigError("config: sweep_values is empty");
        if (!std::is_sorted(sweep_values.begin(), sweep_values.end()))
            throw ConfigError("config: sweep_values must be sorted ascending");
        if (algorithms.empty())
            throw ConfigError("config: no algorithms selected");
        const bool any_joint = joint();
        if (any_joint && !std::all_of(algorithms.begin(), algorithms.end(), is_joint))
            throw ConfigError("config: joint algorithms need M2 scenes and cannot share a run with ULA/MWC algorithms");
        if (sweep_variable == SweepVariable::NSensors || sweep_variable == SweepVariable::Q)
            for (double v : sweep_values)
                if (!is_integer(v))
                    throw ConfigError("config: sensor and snapshot counts must be integers");
        if (any_joint && sweep_variable == SweepVariable::NSensors)
            for (double v : sweep_values)
                if (std::lround(v) % 2 == 0)
                    throw ConfigError("config: L-shape sensor totals 2N - 1 must be odd");

        for (std::size_t i = 0; i < sweep_values.size(); ++i)
        {
            const FixedParams p = at(i);
            std::ostringstream where;
            where << "config (sweep value " << sweep_values[i] << "): ";
            if (p.m < 1)
                throw ConfigError(where.str() + "M must be >= 1");
            if (p.n < 2)
                throw ConfigError(where.str() + "N must be >= 2");
            if (!(p.m * p.b < 0.5 * p.f_nyq))
                throw ConfigError(where.str() + "need M * B < f_nyq / 2");
            if (!(std::abs(p.theta) < 0.5 * kPi))
                throw ConfigError(where.str() + "theta must lie in (-90, 90) degrees");
            if (!(p.d > 0.0) || !(p.c > 0.0))
                throw ConfigError(where.str() + "d and c must be positive");
            if (any_joint && !(p.d < p.c / p.f_nyq))
                throw ConfigError(where.str() + "joint recovery needs d < c / f_nyq");
            try
            {
                frontend::SimGrid::make(array_frontend(p), p.f_nyq);
            }
            catch (const ConfigError &e)
            {
                throw ConfigError(where.str() + e.what());
            }
        }
    }

    void ExperimentConfig::apply_paper_scale()
    {
        trials = kPaperTrials;
        fixed.q = kPaperSnapshots;
    }

    ExperimentConfig ExperimentConfig::from_json(const json &j)
    {
        try
        {
            ExperimentConfig c;
            c.name = j.value("name", c.name);
            c.sweep_variable = sweep_variable_from_string(j.at("sweep_variable").get<std::string>());
            c.sweep_values = j.at("sweep_values").get<std::vector<double>>();
            c.trials = j.value("trials", c.trials);
            c.seed = j.value("seed", c.seed);
            c.cs_delta_1d = j.value("cs_delta_1d", 0.0);
            c.cs_delta_joint = j.value("cs_delta_joint", 0.0);
            for (const auto &a : j.at("algorithms"))
                c.algorithms.push_back(algorithm_from_string(a.get<std::string>()));
            if (j.contains("fixed"))
            {
                const json &f = j.at("fixed");
                FixedParams &p = c.fixed;
                p.m = f.value("M", p.m);
                p.f_nyq = f.value("f_nyq", p.f_nyq);
                p.b = f.value("B", p.b);
                p.f_s = f.value("f_s", p.f_s);
                p.f_p = f.value("f_p", p.f_p);
                p.d = f.value("d", p.d);
                p.n = f.value("N", p.n);
                p.q = f.value("Q", p.q);
                if (f.contains("snr"))
                    p.snr_db = f.at("snr").is_string() ? parse_snr(f.at("snr").get<std::string>())
                                                       : f.at("snr").get<double>();
                p.theta = deg_to_rad(f.value("theta_deg", rad_to_deg(p.theta)));
                p.c = f.value("c", p.c);
            }
            return c;
        }
        catch (const json::exception &e)
        {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }

    json ExperimentConfig::to_json() const
    {
        json algs = json::array();
        for (auto a : algorithms)
            algs.push_back(to_string(a));
        return {{"name", name},
                {"sweep_variable", to_string(sweep_variable)},
                {"sweep_values", sweep_values},
                {"trials", trials},
                {"seed", seed},
                {"algorithms", algs},
                {"cs_delta_1d", cs_delta_1d},
                {"cs_delta_joint", cs_delta_joint},
                {"fixed",
                 {{"M", fixed.m},
                  {"f_nyq", fixed.f_nyq},
                  {"B", fixed.b},
                  {"f_s", fixed.f_s},
                  {"f_p", fixed.f_p},
                  {"d", fixed.d},
                  {"N", fixed.n},
                  {"Q", fixed.q},
                  {"snr", std::isinf(fixed.snr_db) ? json("inf") : json(fixed.snr_db)},
                  {"theta_deg", rad_to_deg(fixed.theta)},
                  {"c", fixed.c}}}};
    }

    struct SweepPoint::Shared
    {
        frontend::FrontEndConfig cfg;
        frontend::FrontEndConfig cfg_mwc;
        frontend::SimGrid grid;
        std::optional<sparse::Dictionary> dict_1d;
        std::optional<sparse::Dictionary> dict_joint;
        CMat krao;
    };

    SweepPoint::SweepPoint(const ExperimentConfig &config, std::size_t index)
        : config_(config), index_(index), params_(config.at(index)), shared_(std::make_unique<Shared>())
    {
        const FixedParams &p = params_;
        shared_->cfg = array_frontend(p);
        shared_->cfg_mwc = mwc_frontend(p, config.seed);
        shared_->grid = frontend::SimGrid::make(shared_->cfg, p.f_nyq);
        const auto &algs = config.algorithms;
        if (std::find(algs.begin(), algs.end(), Algorithm::MmvCs) != algs.end())
        {
            const double delta = config.cs_delta_1d > 0.0 ? config.cs_delta_1d : p.f_p / 4.0;
            shared_->dict_1d = sparse::build_grid_1d(p.n, delta, p.f_nyq, p.d, p.c, p.theta);
        }
        if (std::find(algs.begin(), algs.end(), Algorithm::JointCs) != algs.end())
        {
            const double delta = config.cs_delta_joint > 0.0 ? config.cs_delta_joint : p.f_nyq / 64.0;
            shared_->dict_joint = sparse::build_grid_joint(p.n, delta, p.f_nyq, p.d, p.c);
            shared_->krao = sparse::krao_dictionary(*shared_->dict_joint);
        }
    }

    SweepPoint::~SweepPoint() = default;

    TrialOutcome SweepPoint::run_trial(int trial) const
    {
        const FixedParams &p = params_;
        const Shared &sh = *shared_;
        const std::uint64_t trial_seed = linalg::derive_seed(config_.seed, index_, static_cast<std::uint64_t>(trial));
        const std::uint64_t noise_seed = linalg::derive_seed(trial_seed, 2);

        TrialOutcome out;
        out.per_algorithm.resize(config_.algorithms.size());
        const model::SceneModel scene_model =
            config_.joint() ? model::SceneModel::m2() : model::SceneModel::m1(p.theta);
        try
        {
            out.scene = model::draw_scene(p.m, p.f_nyq, p.b, scene_model, linalg::derive_seed(trial_seed, 1),
                                          sh.grid.bin_hz);
        }
        catch (const Error &e)
        {
            for (auto &a : out.per_algorithm)
                a.error = e.what();
            return out;
        }
        const model::SignalScene &scene = out.scene;
        const model::NyquistSignal truth = frontend::render_truth(scene, sh.cfg);

        std::optional<frontend::SampleSet> ula, lshape, mwc;
        auto ula_samples = [&]() -> const frontend::SampleSet & {
            if (!ula)
                ula = frontend::sample(scene, {model::ArrayKind::Ula, p.n, p.d, p.c}, sh.cfg, p.snr_db, noise_seed);
            return *ula;
        };
        auto lshape_samples = [&]() -> const frontend::SampleSet & {
            if (!lshape)
                lshape =
                    frontend::sample(scene, {model::ArrayKind::LShape, p.n, p.d, p.c}, sh.cfg, p.snr_db, noise_seed);
            return *lshape;
        };
        auto mwc_samples = [&]() -> const frontend::SampleSet & {
            if (!mwc)
                mwc = frontend::sample(scene, {model::ArrayKind::MwcSingleSensor, p.n, p.d, p.c}, sh.cfg_mwc,
                                       p.snr_db, noise_seed);
            return *mwc;
        };

        auto finish_array = [&](AlgorithmOutcome &o, const frontend::SampleSet &s, std::vector<double> f,
                                std::vector<double> th) {
            const recon::Reconstruction rec = recon::reconstruct_array(s, f, th, sh.cfg, p.b, p.f_nyq);
            o.mse = recon::mse_norm(truth, rec.u_hat);
            o.mse_per_tx = recon::band_mse(scene, sh.cfg, rec.s_hat, f);
            o.carriers = std::move(f);
            o.aoas = std::move(th);
            o.ok = true;
        };

        for (std::size_t k = 0; k < config_.algorithms.size(); ++k)
        {
            AlgorithmOutcome &o = out.per_algorithm[k];
            try
            {
                switch (config_.algorithms[k])
                {
                case Algorithm::Esprit:
                case Algorithm::EspritSmoothed:
                {
                    const auto &s = ula_samples();
                    const esprit::CovarianceMatrix r = config_.algorithms[k] == Algorithm::Esprit
                                                           ? esprit::covariance(s)
                                                           : esprit::smooth_covariance(s, p.m);
                    std::vector<double> f = esprit::esprit_1d(r, p.m, p.d, p.c, p.theta);
                    o.carrier_err = recon::carrier_error(scene.carriers(), f, p.f_nyq);
                    finish_array(o, s, f, std::vector<double>(f.size(), p.theta));
                    break;
                }
                case Algorithm::MmvCs:
                {
                    const auto &s = ula_samples();
                    const CMat v = sparse::ctf_frame(esprit::covariance(s));
                    const sparse::SupportEstimate sup = sparse::somp(v, sh.dict_1d->g, p.m);
                    std::vector<double> f = sparse::support_carriers(*sh.dict_1d, sup);
                    o.carrier_err = recon::carrier_error(scene.carriers(), f, p.f_nyq);
                    finish_array(o, s, f, std::vector<double>(f.size(), p.theta));
                    break;
                }
                case Algorithm::JointEsprit:
                {
                    const auto &s = lshape_samples();
                    const cascade::JointEstimate est = cascade::joint_esprit(cascade::cross_covariances(s), p.m, p.d, p.c);
                    const auto e = recon::joint_error(scene.carriers(), scene.aoas(), est.carriers(), est.aoas(), p.f_nyq);
                    o.carrier_err = e.carrier_err;
                    o.aoa_err = e.aoa_err;
                    finish_array(o, s, est.carriers(), est.aoas());
                    break;
                }
                case Algorithm::JointCs:
                {
                    const auto &s = lshape_samples();
                    const esprit::CovarianceMatrix r = sparse::joint_covariance(s);
                    const sparse::SupportEstimate sup = sparse::omp(sparse::vec(r.r), sh.krao, p.m);
                    std::vector<double> f, th;
                    for (int idx : sup.indices)
                    {
                        const auto &atom = sh.dict_joint->atoms[idx];
                        const auto [fi, ti] = sparse::atom_to_carrier_aoa(atom.alpha, atom.beta);
                        f.push_back(fi);
                        th.push_back(ti);
                    }
                    const auto e = recon::joint_error(scene.carriers(), scene.aoas(), f, th, p.f_nyq);
                    o.carrier_err = e.carrier_err;
                    o.aoa_err = e.aoa_err;
                    finish_array(o, s, f, th);
                    break;
                }
                case Algorithm::MwcBaseline:
                {
                    const auto &s = mwc_samples();
                    const recon::Reconstruction rec = recon::reconstruct_mwc(s, sh.cfg_mwc, 2 * p.m, p.f_nyq);
                    o.mse = recon::mse_norm(truth, rec.u_hat);
                    o.ok = true;
                    break;
                }
                }
            }
            catch (const Error &e)
            {
                o = AlgorithmOutcome{};
                o.error = e.what();
            }
        }
        return out;
    }

    namespace
    {
        std::vector<ResultRow> aggregate(const ExperimentConfig &config, std::size_t index,
                                         const std::vector<TrialOutcome> &trials)
        {
            std::vector<ResultRow> rows;
            for (std::size_t k = 0; k < config.algorithms.size(); ++k)
            {
                ResultRow row;
                row.sweep_variable = to_string(config.sweep_variable);
                row.sweep_value = config.sweep_values[index];
                row.algorithm = to_string(config.algorithms[k]);
                row.trials = static_cast<int>(trials.size());
                double s_mse = 0.0, s_f = 0.0, s_th = 0.0;
                int ok = 0;
                for (const auto &t : trials)
                {
                    const AlgorithmOutcome &o = t.per_algorithm[k];
                    if (!o.ok)
                    {
                        ++row.failures;
                        continue;
                    }
                    ++ok;
                    s_mse += o.mse;
                    s_f += o.carrier_err;
                    s_th += o.aoa_err;
                }
                row.mean_mse = ok ? s_mse / ok : kNaN;
                row.mean_carrier_err = ok ? s_f / ok : kNaN;
                row.mean_aoa_err = ok ? s_th / ok : kNaN;
                rows.push_back(row);
            }
            return rows;
        }

        std::vector<ResultRow> run_impl(const ExperimentConfig &config, int threads, bool serial)
        {
            config.validate();
            std::vector<ResultRow> rows;
            const int n_threads = serial ? 1 : (threads > 0 ? threads : omp_get_max_threads());
            for (std::size_t i = 0; i < config.sweep_values.size(); ++i)
            {
                const SweepPoint point(config, i);
                std::vector<TrialOutcome> outcomes(config.trials);
                if (serial)
                {
                    for (int t = 0; t < config.trials; ++t)
                        outcomes[t] = point.run_trial(t);
                }
                else
                {
#pragma omp parallel for schedule(dynamic) num_threads(n_threads)
                    for (int t = 0; t < config.trials; ++t)
                        outcomes[t] = point.run_trial(t);
                }
                const auto part = aggregate(config, i, outcomes);
                rows.insert(rows.end(), part.begin(), part.end());
            }
            return rows;
        }

        std::string fmt(double v)
        {
            if (std::isnan(v))
                return "nan";
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }
    }

    std::vector<ResultRow> run(const ExperimentConfig &config, int threads) { return run_impl(config, threads, false); }

    std::vector<ResultRow> run_serial(const ExperimentConfig &config) { return run_impl(config, 1, true); }

    std::string to_csv(const std::vector<ResultRow> &rows)
    {
        std::string out = std::string(kCsvHeader) + "\n";
        for (const auto &r : rows)
        {
            out += r.sweep_variable + "," + fmt(r.sweep_value) + "," + r.algorithm + "," + std::to_string(r.trials) +
                   "," + std::to_string(r.failures) + "," + fmt(r.mean_mse) + "," + fmt(r.mean_carrier_err) + "," +
                   fmt(r.mean_aoa_err) + "\n";
        }
        return out;
    }

    std::vector<ResultRow> parse_csv(const std::string &text)
    {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line) || line != kCsvHeader)
            throw IoError("csv: unexpected header");
        std::vector<ResultRow> rows;
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            std::vector<std::string> f;
            std::stringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ','))
                f.push_back(cell);
            if (f.size() != 8)
                throw IoError("csv: expected 8 fields in '" + line + "'");
            ResultRow r;
            r.sweep_variable = f[0];
            r.sweep_value = std::strtod(f[1].c_str(), nullptr);
            r.algorithm = f[2];
            r.trials = std::stoi(f[3]);
            r.failures = std::stoi(f[4]);
            r.mean_mse = std::strtod(f[5].c_str(), nullptr);
            r.mean_carrier_err = std::strtod(f[6].c_str(), nullptr);
            r.mean_aoa_err = std::strtod(f[7].c_str(), nullptr);
            rows.push_back(r);
        }
        return rows;
    }

    std::string to_svg(const std::vector<ResultRow> &rows, Metric metric)
    {
        auto value = [metric](const ResultRow &r) {
            switch (metric)
            {
            case Metric::Mse:
                return r.mean_mse;
            case Metric::CarrierErr:
                return r.mean_carrier_err;
            case Metric::AoaErr:
                return r.mean_aoa_err;
            }
            return kNaN;
        };
        const char *label = metric == Metric::Mse ? "mean MSE" : metric == Metric::CarrierErr ? "mean carrier error"
                                                                                               : "mean AOA error";

        std::map<std::string, std::vector<std::pair<double, double>>> series;
        std::vector<std::string> order;
        double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
        bool all_positive = true;
        for (const auto &r : rows)
        {
            if (!series.count(r.algorithm))
                order.push_back(r.algorithm);
            auto &s = series[r.algorithm];
            const double y = value(r);
            if (!std::isfinite(y))
                continue;
            s.emplace_back(r.sweep_value, y);
            x_lo = std::min(x_lo, r.sweep_value);
            x_hi = std::max(x_hi, r.sweep_value);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
            all_positive = all_positive && y > 0.0;
        }

        const double w = 640, h = 400, ml = 70, mr = 150, mt = 30, mb = 50;
        std::ostringstream svg;
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
        svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        if (x_lo > x_hi)
        {
            svg << "<text x=\"20\" y=\"40\">no finite data</text>\n</svg>\n";
            return svg.str();
        }
        const bool log_y = all_positive && y_hi > 0.0;
        auto ty = [&](double y) { return log_y ? std::log10(y) : y; };
        double yl = ty(y_lo), yh = ty(y_hi);
        if (yh - yl < 1e-12)
        {
            yl -= 0.5;
            yh += 0.5;
        }
        double xl = x_lo, xh = x_hi;
        if (xh - xl < 1e-12)
        {
            xl -= 0.5;
            xh += 0.5;
        }
        auto px = [&](double x) { return ml + (x - xl) / (xh - xl) * (w - ml - mr); };
        auto py = [&](double y) { return h - mb - (ty(y) - yl) / (yh - yl) * (h - mt - mb); };

        svg << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\"" << h - mb
            << "\" stroke=\"black\"/>\n";
        svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << ml << "\" y=\"" << h - 15 << "\" font-size=\"12\">"
            << (rows.empty() ? std::string() : rows.front().sweep_variable) << " [" << fmt(x_lo) << " .. "
            << fmt(x_hi) << "]</text>\n";
        svg << "<text x=\"10\" y=\"20\" font-size=\"12\">" << label << (log_y ? " (log10)" : "") << " ["
            << fmt(y_lo) << " .. " << fmt(y_hi) << "]</text>\n";

        static const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
        int ci = 0;
        for (const auto &name : order)
        {
            const auto &pts = series[name];
            const char *color = colors[ci % 6];
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
            for (const auto &[x, y] : pts)
                svg << px(x) << "," << py(y) << " ";
            svg << "\"/>\n";
            for (const auto &[x, y] : pts)
                svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
            svg << "<text x=\"" << w - mr + 10 << "\" y=\"" << mt + 18 * ci + 10 << "\" font-size=\"12\" fill=\""
                << color << "\">" << name << "</text>\n";
            ++ci;
        }
        svg << "</svg>\n";
        return svg.str();
    }

    std::vector<std::string> emit(const std::vector<ResultRow> &rows, const std::string &dir, const std::string &name,
                                  bool csv, bool svg)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw IoError("cannot create output directory " + dir + ": " + ec.message());
        std::vector<std::string> written;
        const std::filesystem::path base(dir);
        if (csv)
        {
            const std::string path = (base / (name + ".csv")).string();
            io::write_text(path, to_csv(rows));
            written.push_back(path);
        }
        if (svg)
        {
            const std::pair<Metric, const char *> metrics[] = {
                {Metric::Mse, "mse"}, {Metric::CarrierErr, "carrier_err"}, {Metric::AoaErr, "aoa_err"}};
            for (const auto &[m, tag] : metrics)
            {
                const bool any = std::any_of(rows.begin(), rows.end(), [&](const ResultRow &r) {
                    return std::isfinite(m == Metric::Mse ? r.mean_mse
                                                          : m == Metric::CarrierErr ? r.mean_carrier_err
                                                                                    : r.mean_aoa_err);
                });
                if (!any)
                    continue;
                const std::string path = (base / (name + "_" + tag + ".svg")).string();
                io::write_text(path, to_svg(rows, m));
                written.push_back(path);
            }
        }
        return written;
    }
}
