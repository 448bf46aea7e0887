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

#ifndef SRRIS_SCENARIO_HPP
#define SRRIS_SCENARIO_HPP

#include <array>
#include <string>
#include <string_view>

#include <json.hpp>

namespace srris
{
    // Network nodes: source, destination, the two relays and the two surfaces.
    enum class Node
    {
        S,
        D,
        R1,
        R2,
        I1,
        I2
    };

    inline constexpr std::array<Node, 6> all_nodes{Node::S, Node::D, Node::R1, Node::R2, Node::I1, Node::I2};

    std::string_view node_name(Node n);

    // Parses "S", "D", "R1", "R2", "I1", "I2"; throws ConfigError otherwise.
    Node parse_node(std::string_view name);

    enum class Fading
    {
        Rician,
        Rayleigh
    };

    struct Point
    {
        double x = 0.0;
        double y = 0.0;
    };

    // Transmit powers and receiver noise, all linear watts.
    struct LinkBudget
    {
        double p_s = 0.5;
        double p_r2 = 0.5;
        double sigma2 = 1.0;
    };

    // Geometry, power and propagation parameters of one network instance.
    // Defaults reproduce the reference layout: S at the origin, D 100 m away,
    // relays at (50, +-25) and surfaces 5 m behind them at (50, +-30).
    struct Scenario
    {
        std::array<Point, 6> coords{Point{0.0, 0.0}, Point{100.0, 0.0}, Point{50.0, 25.0},
                                    Point{50.0, -25.0}, Point{50.0, 30.0}, Point{50.0, -30.0}};
        int M = 32;                // elements per surface
        double p = 1.0;            // total transmit power
        double power_split = 0.5;  // p_s = power_split * p, p_r2 = (1 - power_split) * p
        double sigma2 = 1.0;       // noise variance
        double k_r = 3.1622776601683795; // Rician K-factor, linear (5 dB)
        double alpha_los = 2.3;
        double alpha_nlos = 3.5;
        Fading iri_fading = Fading::Rician;

        const Point &at(Node n) const { return coords[static_cast<std::size_t>(n)]; }
        Point &at(Node n) { return coords[static_cast<std::size_t>(n)]; }

        LinkBudget budget() const { return {power_split * p, (1.0 - power_split) * p, sigma2}; }

        // Sets p so that p / sigma2 equals the given transmit SNR.
        void set_snr_db(double snr_db);
        double snr_db() const;

        // Throws ConfigError describing the first violated invariant.
        void validate() const;
    };

    double db_to_linear(double db);
    double linear_to_db(double lin);

    // Euclidean distance between two nodes of the scenario.
    double link_distance(const Scenario &sc, Node a, Node b);

    // String overload used at configuration boundaries; unknown ids raise ConfigError.
    double link_distance(const Scenario &sc, std::string_view a, std::string_view b);

    // JSON mapping. Keys mirror the field names; the K-factor is exchanged in dB as "k_r_db"
    // and coordinates as {"S": [x, y], ...}. Missing keys keep their defaults.
    Scenario scenario_from_json(const nlohmann::json &j, const std::string &path = "scenario");
    nlohmann::json scenario_to_json(const Scenario &sc);
}

#endif
