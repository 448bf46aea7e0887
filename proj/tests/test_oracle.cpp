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

#include "srris/errors.hpp"
#include "srris/oracle.hpp"
#include "srris/sdp.hpp"
#include "support.hpp"

using namespace srris;
using namespace testsupport;

namespace
{
    double grid_point(int k, int levels) { return -pi + 2.0 * pi * k / levels; }

    PhaseVector snap(const PhaseVector &th, int levels)
    {
        RVector out(th.size());
        for (int i = 0; i < th.size(); ++i)
        {
            const long k = std::lround((th[i] + pi) / (2.0 * pi) * levels) % levels;
            out[i] = grid_point(static_cast<int>(k), levels);
        }
        return PhaseVector(out);
    }
}

TEST_CASE("config and guards")
{
    OracleConfig c;
    c.validate();
    c.levels = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);

    Rng rng(1);
    const ChannelRealization r3 = gaussian_realization(3, rng);
    CHECK_THROWS_AS(brute_force_search(r3, {}, {}), GuardError);
    OracleConfig wide;
    wide.max_elements = 6;
    wide.levels = 64; // 64^6 > 1e8
    CHECK_THROWS_AS(brute_force_search(r3, {}, wide), GuardError);
    wide.levels = 8; // 8^6 fits
    CHECK(brute_force_search(r3, {}, wide).evaluated == 262144);
}

TEST_CASE("one free phase matches a line scan")
{
    Rng rng(2);
    ChannelRealization r = gaussian_realization(1, rng);
    r.h_si2.setZero(); // second surface carries nothing: theta_2 is irrelevant
    r.h_i2r1.setZero();
    r.h_r2i2.setZero();
    r.h_i2d.setZero();
    r.restack();
    const LinkBudget b{1.0, 1.0, 0.3};
    const OracleResult res = brute_force_search(r, b, {});

    double scan = 0.0, dense = 0.0;
    for (int k = 0; k < 64; ++k)
        scan = std::max(scan, reference_rate(r, RVector::Constant(2, grid_point(k, 64)), 1.0, 1.0, 0.3));
    for (int k = 0; k < 20000; ++k)
        dense = std::max(dense, reference_rate(r, RVector::Constant(2, -pi + 2 * pi * k / 20000.0), 1.0, 1.0, 0.3));
    CHECK(res.rate == doctest::Approx(scan).epsilon(1e-12));
    CHECK(res.rate <= dense + 1e-12);
    CHECK(res.evaluated == 64 * 64);
}

TEST_CASE("grid maximum dominates snapped random phases and stays below the relaxation")
{
    Scenario sc;
    sc.M = 1;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        sc.set_snr_db(6.0 * static_cast<double>(seed));
        Rng rng(seed);
        const ChannelRealization r = sample_realization(sc, rng);
        const LinkBudget b = sc.budget();
        const OracleResult res = brute_force_search(r, b, {});
        for (int i = 0; i < 2; ++i)
            CHECK(res.theta[i] >= -pi);
        CHECK(res.rate == doctest::Approx(reference_rate(r, res.theta.values(), b.p_s, b.p_r2, b.sigma2)));
        for (int i = 0; i < 200; ++i)
        {
            const PhaseVector th = snap(random_phases(2, rng), 64);
            CHECK(reference_rate(r, th.values(), b.p_s, b.p_r2, b.sigma2) <= res.rate);
        }
        const SdpResult sdp = solve_sdp(r, b, SdpOptions{}, rng);
        CHECK(res.rate <= sdp.upper_bound_rate + 1e-6);
    }
}

TEST_CASE("relays without surfaces")
{
    const LinkBudget b{1.0, 1.0, 1.0};
    const ChannelRealization loud = direct_only(2, 1.0, 1e4, 1.0);
    CHECK(rate_sr_no_ris(loud, b) < 1e-7);

    const ChannelRealization quiet = direct_only(2, 2.0, 0.0, 1.0);
    CHECK(rate_sr_no_ris(quiet, b) == doctest::Approx(std::min(std::log2(5.0), 1.0)));

    Rng rng(3);
    for (int i = 0; i < 50; ++i)
    {
        const ChannelRealization r = gaussian_realization(3, rng);
        const LinkBudget bb{rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0)};
        const ChannelRealization z = r.without_surfaces();
        CHECK(rate_sr_no_ris(r, bb) ==
              doctest::Approx(reference_rate(z, random_phases(6, rng).values(), bb.p_s, bb.p_r2, bb.sigma2))
                  .epsilon(1e-12));
    }
}

TEST_CASE("surfaces only: closed form and alignment")
{
    CVector one = CVector::Ones(1), zero = CVector::Zero(1);
    const ChannelRealization unit = make_realization(0.0, 0.0, 0.0, one, zero, zero, zero, zero, zero, one, zero);
    CHECK(rate_ris_only(unit, 1.0, 1.0) == doctest::Approx(1.0));

    Rng rng(4);
    for (int trial = 0; trial < 10; ++trial)
    {
        const ChannelRealization r = gaussian_realization(4, rng);
        const double p = rng.uniform(0.1, 5.0), s2 = rng.uniform(0.1, 2.0);
        const double closed = rate_ris_only(r, p, s2);
        const CVector aligned = ris_only_phases(r).reflection();
        const double gain = std::norm((r.h_id.array() * aligned.array() * r.h_si.array()).sum());
        CHECK(std::log2(1.0 + p * gain / s2) == doctest::Approx(closed).epsilon(1e-12));
        for (int i = 0; i < 1000; ++i)
        {
            const CVector refl = random_phases(8, rng).reflection();
            const double g = std::norm((r.h_id.array() * refl.array() * r.h_si.array()).sum());
            REQUIRE(std::log2(1.0 + p * g / s2) <= closed + 1e-12);
        }
    }
}

TEST_CASE("surfaces only: coherent gain grows with M")
{
    Scenario sc;
    auto mean_amp = [&](int M) {
        sc.M = M;
        Rng rng(5);
        double acc = 0.0;
        for (int i = 0; i < 400; ++i)
        {
            const ChannelRealization r = sample_realization(sc, rng);
            acc += (r.h_id.cwiseAbs().array() * r.h_si.cwiseAbs().array()).sum();
        }
        return acc / 400;
    };
    const double ratio = mean_amp(16) / mean_amp(8);
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.1));
}
