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

#ifndef SUBNYQ_HARNESS_HPP
#define SUBNYQ_HARNESS_HPP

#include "subnyq/recon.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace subnyq::harness
{
    enum class SweepVariable
    {
        D,
        FpOverB,
        NSensors,
        Q,
        SnrDb,
        FsOverFp
    };

    enum class Algorithm
    {
        Esprit,
        EspritSmoothed,
        MmvCs,
        JointEsprit,
        JointCs,
        MwcBaseline
    };

    std::string to_string(SweepVariable v);
    std::string to_string(Algorithm a);
    SweepVariable sweep_variable_from_string(const std::string &s);
    Algorithm algorithm_from_string(const std::string &s);
    bool is_joint(Algorithm a);

    // Parameters held fixed while one variable sweeps. n is the sensor count
    // per axis (ULA sensors, L-shape arm length, MWC channels).
    struct FixedParams
    {
        int m = 3;
        double f_nyq = 10e9;
        double b = 50e6;
        double f_s = 65e6;
        double f_p = 65e6;
        double d = 0.03;
        int n = 10;
        int q = 200;
        double snr_db = 10.0;
        double theta = 0.0; // shared AOA of M1 scenes, radians
        double c = kSpeedOfLight;
    };

    struct ExperimentConfig
    {
        std::string name = "results";
        SweepVariable sweep_variable = SweepVariable::SnrDb;
        std::vector<double> sweep_values;
        FixedParams fixed;
        int trials = 100;
        std::vector<Algorithm> algorithms;
        std::uint64_t seed = 1;
        double cs_delta_1d = 0.0;    // 0 selects f_p / 4
        double cs_delta_joint = 0.0; // 0 selects f_nyq / 64

        // Throws ConfigError describing the first problem found.
        void validate() const;

        // Parameters in force at sweep point `index`. A sensor-count sweep
        // gives the physical sensor total: N for the ULA and MWC, 2N - 1 for the L-shape.
        FixedParams at(std::size_t index) const;

        bool joint() const;
        void apply_paper_scale();

        static ExperimentConfig from_json(const nlohmann::json &j);
        nlohmann::json to_json() const;
    };

    inline constexpr int kPaperTrials = 2000;
    inline constexpr int kPaperSnapshots = 400;

    struct AlgorithmOutcome
    {
        bool ok = false;
        std::string error;
        double mse = std::numeric_limits<double>::quiet_NaN();
        double mse_per_tx = std::numeric_limits<double>::quiet_NaN();
        double carrier_err = std::numeric_limits<double>::quiet_NaN();
        double aoa_err = std::numeric_limits<double>::quiet_NaN();
        std::vector<double> carriers;
        std::vector<double> aoas;
    };

    struct TrialOutcome
    {
        model::SignalScene scene;
        std::vector<AlgorithmOutcome> per_algorithm; // config.algorithms order
    };

    // Everything one sweep point shares across its trials (dictionaries,
    // MWC sign sequences). Read-only once built.
    class SweepPoint
    {
    public:
        SweepPoint(const ExperimentConfig &config, std::size_t index);
        ~SweepPoint();
        SweepPoint(const SweepPoint &) = delete;
        SweepPoint &operator=(const SweepPoint &) = delete;

        // One realization: a single scene and noise seed feed every algorithm.
        TrialOutcome run_trial(int trial) const;

        const FixedParams &params() const { return params_; }

    private:
        struct Shared;
        const ExperimentConfig &config_;
        std::size_t index_;
        FixedParams params_;
        std::unique_ptr<Shared> shared_;
    };

    struct ResultRow
    {
        std::string sweep_variable;
        double sweep_value = 0.0;
        std::string algorithm;
        int trials = 0;
        int failures = 0;
        double mean_mse = 0.0;
        double mean_carrier_err = 0.0;
        double mean_aoa_err = 0.0;
    };

    // Trials run on an OpenMP pool (threads <= 0 keeps the runtime default).
    // Rows are aggregated in trial order, so the result does not depend on the thread count.
    std::vector<ResultRow> run(const ExperimentConfig &config, int threads = 0);

    // Single-threaded reference of run().
    std::vector<ResultRow> run_serial(const ExperimentConfig &config);

    inline const char *kCsvHeader =
        "sweep_variable,sweep_value,algorithm,trials,failures,mean_mse,mean_carrier_err,mean_aoa_err";

    std::string to_csv(const std::vector<ResultRow> &rows);
    std::vector<ResultRow> parse_csv(const std::string &text);

    enum class Metric
    {
        Mse,
        CarrierErr,
        AoaErr
    };

    // Line plot of one metric against the sweep value, one polyline per algorithm.
    std::string to_svg(const std::vector<ResultRow> &rows, Metric metric);

    // Writes <dir>/<name>.csv and/or <dir>/<name>_<metric>.svg; returns the paths written.
    std::vector<std::string> emit(const std::vector<ResultRow> &rows, const std::string &dir, const std::string &name,
                                  bool csv, bool svg);
}

#endif
