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

#ifndef SUBNYQ_IO_HPP
#define SUBNYQ_IO_HPP

#include "subnyq/recon.hpp"

#include <json.hpp>

#include <string>

namespace subnyq::io
{
    // Scene file: {f_nyq, b, model, theta (M1 only), carriers[], aoas[], seeds[], powers[]}.
    // Angles are radians.
    nlohmann::json scene_to_json(const model::SignalScene &scene);
    model::SignalScene scene_from_json(const nlohmann::json &j);
    void write_scene(const std::string &path, const model::SignalScene &scene);
    model::SignalScene read_scene(const std::string &path);

    nlohmann::json geometry_to_json(const model::ArrayGeometry &g);
    model::ArrayGeometry geometry_from_json(const nlohmann::json &j);

    // Raw matrix: little-endian float64 pairs (re, im), row-major.
    void write_matrix(const std::string &path, const CMat &m);
    CMat read_matrix(const std::string &path, Eigen::Index rows, Eigen::Index cols);

    // <stem>.bin plus the sidecar <stem>.json {N, Q, f_s, geometry}. For the
    // L-shape the file holds the N rows of x followed by the N rows of z.
    void write_samples(const std::string &stem, const frontend::SampleSet &samples);
    frontend::SampleSet read_samples(const std::string &stem);

    // w_hat in the sample format at <stem>.*, and u_hat (one row at the
    // Nyquist grid rate) at <stem>_u.*.
    void write_reconstruction(const std::string &stem, const recon::Reconstruction &rec, double f_s,
                              const model::ArrayGeometry &geometry);

    nlohmann::json read_json(const std::string &path);
    void write_text(const std::string &path, const std::string &text);
}

#endif
