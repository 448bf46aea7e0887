// SPDX-License-Identifier: Apache-2.0
//
// srris: successive relaying with reconfigurable intelligent surfaces
// Copyright (C) 2026 The srris authors
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

#include "srris/scenario.hpp"
#include "srris/errors.hpp"

#include <cmath>
#include <utility>

namespace srris
{
    namespace
    {
        // Links that the channel model draws; each must have a strictly positive length.
        constexpr std::array<std::pair<Node, Node>, 11> modeled_links{{
            {Node::S, Node::R1},
            {Node::R2, Node::R1},
            {Node::R2, Node::D},
            {Node::S, Node::I1},
            {Node::S, Node::I2},
            {Node::I1, Node::R1},
            {Node::I2, Node::R1},
            {Node::R2, Node::I1},
            {Node::R2, Node::I2},
            {Node::I1, Node::D},
            {Node::I2, Node::D},
        }};

        double number_at(const nlohmann::json &j, const std::string &key, const std::string &path)
        {
            const auto &v = j.at(key);
            if (!v.is_number())
                throw ConfigError(path + "." + key + ": expected a number");
            return v.get<double>();
        }
    }

    std::string_view node_name(Node n)
    {
        switch (n)
        {
        case Node::S:
            return "S";
        case Node::D:
            return "D";
        case Node::R1:
            return "R1";
        case Node::R2:
            return "R2";
        case Node::I1:
            return "I1";
        case Node::I2:
            return "I2";
        }
        return "?";
    }

    Node parse_node(std::string_view name)
    {
        for (Node n : all_nodes)
            if (node_name(n) == name)
                return n;
        throw ConfigError("unknown node id '" + std::string(name) + "'");
    }

    double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

    void Scenario::set_snr_db(double snr_db) { p = sigma2 * db_to_linear(snr_db); }
    double Scenario::snr_db() const { return linear_to_db(p / sigma2); }

    void Scenario::validate() const
    {
        if (M < 1)
            throw ConfigError("scenario.M: must be >= 1, got " + std::to_string(M));
        if (!(p > 0.0) || !std::isfinite(p))
            throw ConfigError("scenario.p: must be finite and > 0");
        if (!(power_split > 0.0 && power_split < 1.0))
            throw ConfigError("scenario.power_split: must lie in (0, 1)");
        if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
            throw ConfigError("scenario.sigma2: must be finite and > 0");
        if (!(k_r >= 0.0))
            throw ConfigError("scenario.k_r: must be >= 0");
        if (!(alpha_los > 0.0) || !std::isfinite(alpha_los))
            throw ConfigError("scenario.alpha_los: must be finite and > 0");
        if (!(alpha_nlos > 0.0) || !std::isfinite(alpha_nlos))
            throw ConfigError("scenario.alpha_nlos: must be finite and > 0");
        for (Node n : all_nodes)
        {
            const auto &pt = at(n);
            if (!std::isfinite(pt.x) || !std::isfinite(pt.y))
                throw ConfigError("scenario.coords." + std::string(node_name(n)) + ": non-finite coordinate");
        }
        for (auto [a, b] : modeled_links)
            if (!(link_distance(*this, a, b) > 0.0))
                throw ConfigError("scenario.coords: nodes " + std::string(node_name(a)) + " and " +
                                  std::string(node_name(b)) + " coincide");
    }

    double link_distance(const Scenario &sc, Node a, Node b)
    {
        const auto &pa = sc.at(a);
        const auto &pb = sc.at(b);
        return std::hypot(pa.x - pb.x, pa.y - pb.y);
    }

    double link_distance(const Scenario &sc, std::string_view a, std::string_view b)
    {
        return link_distance(sc, parse_node(a), parse_node(b));
    }

    Scenario scenario_from_json(const nlohmann::json &j, const std::string &path)
    {
        if (!j.is_object())
            throw ConfigError(path + ": expected an object");
        Scenario sc;
        for (auto it = j.begin(); it != j.end(); ++it)
        {
            const std::string &key = it.key();
            const auto &v = it.value();
            if (key == "coords")
            {
                if (!v.is_object())
                    throw ConfigError(path + ".coords: expected an object of node -> [x, y]");
                for (auto c = v.begin(); c != v.end(); ++c)
                {
                    Node n;
                    try
                    {
                        n = parse_node(c.key());
                    }
                    catch (const ConfigError &)
                    {
                        throw ConfigError(path + ".coords." + c.key() + ": unknown node id");
                    }
                    const auto &xy = c.value();
                    if (!xy.is_array() || xy.size() != 2 || !xy[0].is_number() || !xy[1].is_number())
                        throw ConfigError(path + ".coords." + c.key() + ": expected [x, y]");
                    sc.at(n) = {xy[0].get<double>(), xy[1].get<double>()};
                }
            }
            else if (key == "M")
            {
                if (!v.is_number_integer())
                    throw ConfigError(path + ".M: expected an integer");
                sc.M = v.get<int>();
            }
            else if (key == "p")
                sc.p = number_at(j, key, path);
            else if (key == "snr_db")
                sc.set_snr_db(number_at(j, key, path));
            else if (key == "power_split")
                sc.power_split = number_at(j, key, path);
            else if (key == "sigma2")
                sc.sigma2 = number_at(j, key, path);
            else if (key == "k_r_db")
                sc.k_r = db_to_linear(number_at(j, key, path));
            else if (key == "k_r")
                sc.k_r = (v.is_string() && v.get<std::string>() == "inf") ? HUGE_VAL : number_at(j, key, path);
            else if (key == "alpha_los")
                sc.alpha_los = number_at(j, key, path);
            else if (key == "alpha_nlos")
                sc.alpha_nlos = number_at(j, key, path);
            else if (key == "iri_fading")
            {
                const std::string f = v.is_string() ? v.get<std::string>() : "";
                if (f == "rician")
                    sc.iri_fading = Fading::Rician;
                else if (f == "rayleigh")
                    sc.iri_fading = Fading::Rayleigh;
                else
                    throw ConfigError(path + ".iri_fading: expected \"rician\" or \"rayleigh\"");
            }
            else
                throw ConfigError(path + "." + key + ": unknown key");
        }
        // snr_db is relative to sigma2; re-apply if both were given in either order.
        if (j.contains("snr_db"))
            sc.set_snr_db(j.at("snr_db").get<double>());
        sc.validate();
        return sc;
    }

    nlohmann::json scenario_to_json(const Scenario &sc)
    {
        nlohmann::json coords = nlohmann::json::object();
        for (Node n : all_nodes)
            coords[std::string(node_name(n))] = {sc.at(n).x, sc.at(n).y};
        nlohmann::json out = {
            {"coords", coords},
            {"M", sc.M},
            {"p", sc.p},
            {"power_split", sc.power_split},
            {"sigma2", sc.sigma2},
            {"alpha_los", sc.alpha_los},
            {"alpha_nlos", sc.alpha_nlos},
            {"iri_fading", sc.iri_fading == Fading::Rician ? "rician" : "rayleigh"},
        };
        // dB cannot represent a pure-Rayleigh (k_r = 0) or LoS-only (infinite) factor.
        if (sc.k_r > 0.0 && std::isfinite(sc.k_r))
            out["k_r_db"] = linear_to_db(sc.k_r);
        else
            out["k_r"] = std::isfinite(sc.k_r) ? nlohmann::json(sc.k_r) : nlohmann::json("inf");
        return out;
    }
}
