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

#include "subnyq/io.hpp"
#include "subnyq/error.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace subnyq::io
{
    using nlohmann::json;

    json scene_to_json(const model::SignalScene &scene)
    {
        json j;
        j["f_nyq"] = scene.f_nyq_hz;
        j["b"] = scene.bandwidth_hz;
        j["model"] = model::to_string(scene.model.cls);
        if (scene.model.cls == model::ModelClass::M1)
            j["theta"] = scene.model.shared_aoa_rad;
        json carriers = json::array(), aoas = json::array(), seeds = json::array(), powers = json::array();
        for (const auto &t : scene.transmissions)
        {
            carriers.push_back(t.carrier_hz);
            aoas.push_back(t.aoa_rad);
            seeds.push_back(t.seed);
            powers.push_back(t.power);
        }
        j["carriers"] = carriers;
        j["aoas"] = aoas;
        j["seeds"] = seeds;
        j["powers"] = powers;
        return j;
    }

    model::SignalScene scene_from_json(const json &j)
    {
        try
        {
            model::SignalScene s;
            s.f_nyq_hz = j.at("f_nyq").get<double>();
            s.bandwidth_hz = j.at("b").get<double>();
            s.model.cls = model::model_class_from_string(j.at("model").get<std::string>());
            s.model.shared_aoa_rad = j.value("theta", 0.0);
            const auto carriers = j.at("carriers").get<std::vector<double>>();
            const auto aoas = j.at("aoas").get<std::vector<double>>();
            const auto seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
            std::vector<double> powers = j.value("powers", std::vector<double>(carriers.size(), 1.0));
            if (aoas.size() != carriers.size() || seeds.size() != carriers.size() || powers.size() != carriers.size())
                throw ConfigError("scene file: carriers, aoas, seeds and powers differ in length");
            for (std::size_t i = 0; i < carriers.size(); ++i)
                s.transmissions.push_back({carriers[i], aoas[i], s.bandwidth_hz, seeds[i], powers[i]});
            s.validate();
            return s;
        }
        catch (const json::exception &e)
        {
            throw ConfigError(std::string("scene file: ") + e.what());
        }
    }

    json read_json(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open " + path);
        try
        {
            return json::parse(in);
        }
        catch (const json::exception &e)
        {
            throw ConfigError(path + ": " + e.what());
        }
    }

    void write_text(const std::string &path, const std::string &text)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw IoError("cannot write " + path);
        out << text;
        if (!out)
            throw IoError("write failed for " + path);
    }

    void write_scene(const std::string &path, const model::SignalScene &scene)
    {
        write_text(path, scene_to_json(scene).dump(2) + "\n");
    }

    model::SignalScene read_scene(const std::string &path) { return scene_from_json(read_json(path)); }

    json geometry_to_json(const model::ArrayGeometry &g)
    {
        return {{"kind", model::to_string(g.kind)},
                {"n_per_axis", g.n_per_axis},
                {"spacing_m", g.spacing_m},
                {"wave_speed", g.wave_speed}};
    }

    model::ArrayGeometry geometry_from_json(const json &j)
    {
        model::ArrayGeometry g;
        g.kind = model::array_kind_from_string(j.at("kind").get<std::string>());
        g.n_per_axis = j.at("n_per_axis").get<int>();
        g.spacing_m = j.at("spacing_m").get<double>();
        g.wave_speed = j.value("wave_speed", kSpeedOfLight);
        return g;
    }

    namespace
    {
        void put_le(std::ostream &out, double v)
        {
            std::uint64_t bits;
            std::memcpy(&bits, &v, sizeof bits);
            if constexpr (std::endian::native == std::endian::big)
                bits = __builtin_bswap64(bits);
            out.write(reinterpret_cast<const char *>(&bits), sizeof bits);
        }

        double get_le(std::istream &in)
        {
            std::uint64_t bits = 0;
            in.read(reinterpret_cast<char *>(&bits), sizeof bits);
            if constexpr (std::endian::native == std::endian::big)
                bits = __builtin_bswap64(bits);
            double v;
            std::memcpy(&v, &bits, sizeof v);
            return v;
        }

        void write_rows(std::ostream &out, const CMat &m)
        {
            for (Eigen::Index r = 0; r < m.rows(); ++r)
                for (Eigen::Index c = 0; c < m.cols(); ++c)
                {
                    put_le(out, m(r, c).real());
                    put_le(out, m(r, c).imag());
                }
        }

        CMat read_rows(std::istream &in, Eigen::Index rows, Eigen::Index cols, const std::string &path)
        {
            CMat m(rows, cols);
            for (Eigen::Index r = 0; r < rows; ++r)
                for (Eigen::Index c = 0; c < cols; ++c)
                {
                    const double re = get_le(in);
                    const double im = get_le(in);
                    m(r, c) = {re, im};
                }
            if (!in)
                throw IoError(path + ": file shorter than its header states");
            return m;
        }
    }

    void write_matrix(const std::string &path, const CMat &m)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw IoError("cannot write " + path);
        write_rows(out, m);
        if (!out)
            throw IoError("write failed for " + path);
    }

    CMat read_matrix(const std::string &path, Eigen::Index rows, Eigen::Index cols)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot open " + path);
        return read_rows(in, rows, cols, path);
    }

    void write_samples(const std::string &stem, const frontend::SampleSet &samples)
    {
        json h;
        h["N"] = samples.x.rows();
        h["Q"] = samples.x.cols();
        h["f_s"] = samples.f_s;
        h["geometry"] = geometry_to_json(samples.geometry);
        h["has_z"] = samples.z.has_value();
        write_text(stem + ".json", h.dump(2) + "\n");

        std::ofstream out(stem + ".bin", std::ios::binary);
        if (!out)
            throw IoError("cannot write " + stem + ".bin");
        write_rows(out, samples.x);
        if (samples.z)
            write_rows(out, *samples.z);
        if (!out)
            throw IoError("write failed for " + stem + ".bin");
    }

    frontend::SampleSet read_samples(const std::string &stem)
    {
        const json h = read_json(stem + ".json");
        frontend::SampleSet s;
        const auto n = h.at("N").get<Eigen::Index>();
        const auto q = h.at("Q").get<Eigen::Index>();
        s.f_s = h.at("f_s").get<double>();
        s.geometry = geometry_from_json(h.at("geometry"));
        std::ifstream in(stem + ".bin", std::ios::binary);
        if (!in)
            throw IoError("cannot open " + stem + ".bin");
        s.x = read_rows(in, n, q, stem + ".bin");
        if (h.value("has_z", false))
            s.z = read_rows(in, n, q, stem + ".bin");
        return s;
    }

    void write_reconstruction(const std::string &stem, const recon::Reconstruction &rec, double f_s,
                              const model::ArrayGeometry &geometry)
    {
        frontend::SampleSet w;
        w.x = rec.w_hat;
        w.f_s = f_s;
        w.geometry = geometry;
        write_samples(stem, w);

        frontend::SampleSet u;
        u.x = rec.u_hat.time().transpose();
        u.f_s = rec.u_hat.bin_hz * static_cast<double>(rec.u_hat.bins);
        u.geometry = geometry;
        write_samples(stem + "_u", u);
    }
}
