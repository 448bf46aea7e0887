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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "srris/errors.hpp"
#include "support.hpp"

using namespace srris;
using testsupport::pi;

TEST_CASE("link distances on the reference layout")
{
    const Scenario sc;
    CHECK(link_distance(sc, Node::S, Node::D) == doctest::Approx(100.0));
    CHECK(link_distance(sc, Node::R1, Node::I1) == doctest::Approx(5.0));
    CHECK(link_distance(sc, "S", "I1") == doctest::Approx(std::sqrt(50.0 * 50.0 + 30.0 * 30.0)));
    CHECK(link_distance(sc, "S", "I1") == doctest::Approx(58.3095).epsilon(1e-6));

    for (Node a : all_nodes)
        for (Node b : all_nodes)
            CHECK(link_distance(sc, a, b) == link_distance(sc, b, a));

    CHECK_THROWS_AS(link_distance(sc, "S", "X7"), ConfigError);
}

TEST_CASE("scenario defaults and validation")
{
    Scenario sc;
    CHECK(sc.k_r == doctest::Approx(db_to_linear(5.0)));
    CHECK(sc.sigma2 == 1.0);
    CHECK(sc.budget().p_s == sc.budget().p_r2);
    CHECK(sc.budget().p_s + sc.budget().p_r2 == doctest::Approx(sc.p));
    sc.validate();

    sc.set_snr_db(40.0);
    CHECK(sc.p / sc.sigma2 == doctest::Approx(1e4));
    CHECK(sc.snr_db() == doctest::Approx(40.0));

    auto bad = [](auto mutate) {
        Scenario s;
        mutate(s);
        CHECK_THROWS_AS(s.validate(), ConfigError);
    };
    bad([](Scenario &s) { s.M = 0; });
    bad([](Scenario &s) { s.p = 0.0; });
    bad([](Scenario &s) { s.sigma2 = -1.0; });
    bad([](Scenario &s) { s.k_r = -0.1; });
    bad([](Scenario &s) { s.alpha_los = 0.0; });
    bad([](Scenario &s) { s.at(Node::I1) = s.at(Node::R1); });
    bad([](Scenario &s) { s.at(Node::D).x = std::numeric_limits<double>::infinity(); });
}

TEST_CASE("scenario JSON round trip and field paths")
{
    Scenario sc;
    sc.M = 7;
    sc.k_r = db_to_linear(2.0);
    sc.iri_fading = Fading::Rayleigh;
    sc.at(Node::R2) = {51.0, -24.0};
    const Scenario back = scenario_from_json(scenario_to_json(sc));
    CHECK(back.M == 7);
    CHECK(back.k_r == doctest::Approx(sc.k_r));
    CHECK(back.iri_fading == Fading::Rayleigh);
    CHECK(back.at(Node::R2).x == 51.0);
    CHECK(back.at(Node::R2).y == -24.0);

    const nlohmann::json j = {{"k_r_db", 5.0}};
    CHECK(scenario_from_json(j).k_r == doctest::Approx(3.16227766));

    try
    {
        scenario_from_json(nlohmann::json{{"M", -3}});
        FAIL("expected ConfigError");
    }
    catch (const ConfigError &e)
    {
        CHECK(std::string(e.what()).find("scenario.M") != std::string::npos);
    }
    CHECK_THROWS_AS(scenario_from_json(nlohmann::json{{"bogus", 1}}), ConfigError);
}

TEST_CASE("rician vector: pure LoS limit")
{
    Rng rng(11);
    const double d = 37.0;
    const CVector h = sample_rician_vector(d, 64, std::numeric_limits<double>::infinity(), {2.3, 3.5}, rng);
    for (int m = 0; m < h.size(); ++m)
        CHECK(std::abs(h[m]) == doctest::Approx(std::pow(d, -2.3 / 2.0)).epsilon(1e-12));
}

TEST_CASE("rician vector with k = 0 has the NLoS variance")
{
    for (double d : {1.0, 10.0, 80.0})
    {
        Rng rng(static_cast<std::uint64_t>(d * 7));
        double acc = 0.0;
        const int draws = 10000, M = 10;
        for (int i = 0; i < draws; ++i)
            acc += sample_rician_vector(d, M, 0.0, {2.3, 3.5}, rng).squaredNorm();
        const double var = acc / (draws * M);
        CHECK(var == doctest::Approx(std::pow(d, -3.5)).epsilon(0.02));
    }
}

TEST_CASE("rician second moment splits as LoS + NLoS")
{
    // E|h|^2 = k/(k+1) d^-los + 1/(k+1) d^-nlos
    Rng rng(5);
    const double d = 20.0, k = 3.0;
    double acc = 0.0;
    const int draws = 20000, M = 8;
    for (int i = 0; i < draws; ++i)
        acc += sample_rician_vector(d, M, k, {2.3, 3.5}, rng).squaredNorm();
    const double expect = k / (k + 1.0) * std::pow(d, -2.3) + 1.0 / (k + 1.0) * std::pow(d, -3.5);
    CHECK(acc / (draws * M) == doctest::Approx(expect).epsilon(0.02));
}

TEST_CASE("rayleigh scalar moments")
{
    const int draws = 100000;
    for (double d : {1.0, 10.0})
    {
        Rng rng(17);
        double p2 = 0.0;
        cplx mean{};
        for (int i = 0; i < draws; ++i)
        {
            const cplx h = sample_rayleigh_scalar(d, 3.5, rng);
            p2 += std::norm(h);
            mean += h;
        }
        const double var = std::pow(d, -3.5);
        CHECK(p2 / draws == doctest::Approx(var).epsilon(0.02));
        // each component of the mean has standard error sqrt(var / 2 / draws)
        const double se = std::sqrt(var / 2.0 / draws);
        CHECK(std::abs(mean.real() / draws) < 3.0 * se);
        CHECK(std::abs(mean.imag() / draws) < 3.0 * se);
    }
}

TEST_CASE("non-positive distances are domain errors")
{
    Rng rng(1);
    CHECK_THROWS_AS(sample_rayleigh_scalar(0.0, 3.5, rng), DomainError);
    CHECK_THROWS_AS(sample_rician_vector(-1.0, 4, 1.0, {}, rng), DomainError);
}

TEST_CASE("realization determinism and stacking")
{
    Scenario sc;
    sc.M = 6;
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL, 0xFFFFFFFFFFFFULL})
    {
        Rng a(seed), b(seed);
        const ChannelRealization ra = sample_realization(sc, a), rb = sample_realization(sc, b);
        CHECK(ra.h_sr1 == rb.h_sr1);
        CHECK(ra.h_r2r1 == rb.h_r2r1);
        CHECK(ra.h_si == rb.h_si);
        CHECK(ra.h_id == rb.h_id);

        CHECK(ra.num_phases() == 12);
        CHECK(ra.h_si.head(6) == ra.h_si1);
        CHECK(ra.h_si.tail(6) == ra.h_si2);
        CHECK(ra.h_ir1.head(6) == ra.h_i1r1);
        CHECK(ra.h_ir1.tail(6) == ra.h_i2r1);
        CHECK(ra.h_r2i.head(6) == ra.h_r2i1);
        CHECK(ra.h_r2i.tail(6) == ra.h_r2i2);
        CHECK(ra.h_id.head(6) == ra.h_i1d);
        CHECK(ra.h_id.tail(6) == ra.h_i2d);
        CHECK(ra.h_si.allFinite());
    }
}

namespace
{
    // LoS share of the power from the second and fourth moments of |h|:
    // for a Rician amplitude, 2 - E|h|^4 / (E|h|^2)^2 = (K / (K + 1))^2.
    double los_fraction_squared(Fading f)
    {
        Scenario sc;
        sc.M = 1;
        sc.iri_fading = f;
        Rng rng(2024);
        double m2 = 0.0, m4 = 0.0;
        const int draws = 200000;
        for (int i = 0; i < draws; ++i)
        {
            const double p = std::norm(sample_realization(sc, rng).h_r2r1);
            m2 += p;
            m4 += p * p;
        }
        m2 /= draws;
        m4 /= draws;
        return 2.0 - m4 / (m2 * m2);
    }
}

TEST_CASE("IRI fading switch")
{
    // LoS and NLoS decay with different exponents, so the LoS share at distance d is
    // k d^-los / (k d^-los + d^-nlos) rather than k / (k + 1).
    const Scenario sc;
    const double k = sc.k_r, d = link_distance(sc, Node::R2, Node::R1);
    const double los = k * std::pow(d, -sc.alpha_los), nlos = std::pow(d, -sc.alpha_nlos);
    const double share = los / (los + nlos);
    CHECK(los_fraction_squared(Fading::Rician) == doctest::Approx(share * share).epsilon(0.02));
    CHECK(std::abs(los_fraction_squared(Fading::Rayleigh)) < 0.05);
}

TEST_CASE("derived seeds separate streams")
{
    CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(2, {2, 3}));
    CHECK(derive_seed(1, {2}) != derive_seed(1, {2, 0}));
}
