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

// Shared generators and reference implementations for the test suites. Nothing here calls
// into the library's own evaluation code, so the checks stay independent.

#ifndef SRRIS_TESTS_SUPPORT_HPP
#define SRRIS_TESTS_SUPPORT_HPP

#include <cmath>
#include <numbers>

#include "srris/channel.hpp"
#include "srris/sinr.hpp"

namespace testsupport
{
    using namespace srris;
    inline constexpr double pi = std::numbers::pi;

    inline CVector gaussian_vector(int n, Rng &rng, double var = 1.0)
    {
        CVector v(n);
        for (int i = 0; i < n; ++i)
            v[i] = rng.complex_normal(var);
        return v;
    }

    // Unit-scale synthetic realization: every coefficient CN(0, 1).
    inline ChannelRealization gaussian_realization(int M, Rng &rng)
    {
        const cplx a = rng.complex_normal(), b = rng.complex_normal(), c = rng.complex_normal();
        return make_realization(a, b, c, gaussian_vector(M, rng), gaussian_vector(M, rng), gaussian_vector(M, rng),
                                gaussian_vector(M, rng), gaussian_vector(M, rng), gaussian_vector(M, rng),
                                gaussian_vector(M, rng), gaussian_vector(M, rng));
    }

    // Direct links only; every surface vector is zero.
    inline ChannelRealization direct_only(int M, cplx h_sr1, cplx h_r2r1, cplx h_r2d)
    {
        const CVector z = CVector::Zero(M);
        return make_realization(h_sr1, h_r2r1, h_r2d, z, z, z, z, z, z, z, z);
    }

    inline PhaseVector random_phases(int n, Rng &rng)
    {
        RVector th(n);
        for (int i = 0; i < n; ++i)
            th[i] = rng.uniform(-pi, pi);
        return PhaseVector(th);
    }

    struct RefSinr
    {
        double r1, d;
    };

    // Textbook evaluation with Theta materialized as a dense diagonal matrix.
    inline RefSinr reference_sinr(const ChannelRealization &r, const RVector &theta, double p_s, double p_r2,
                                  double sigma2)
    {
        const int n = static_cast<int>(theta.size());
        CMatrix Theta = CMatrix::Zero(n, n);
        for (int i = 0; i < n; ++i)
            Theta(i, i) = std::polar(1.0, theta[i]);
        auto bil = [&](const CVector &x, const CVector &y) { return (x.transpose() * Theta * y).value(); };
        const double sig = std::norm(r.h_sr1 + bil(r.h_ir1, r.h_si));
        const double iri = std::norm(r.h_r2r1 + bil(r.h_ir1, r.h_r2i));
        const double des = std::norm(r.h_r2d + bil(r.h_id, r.h_r2i));
        const double leak = std::norm(bil(r.h_id, r.h_si));
        return {p_s * sig / (p_r2 * iri + sigma2), p_r2 * des / (p_s * leak + sigma2)};
    }

    inline double reference_rate(const ChannelRealization &r, const RVector &theta, double p_s, double p_r2,
                                 double sigma2)
    {
        const RefSinr g = reference_sinr(r, theta, p_s, p_r2, sigma2);
        return std::min(std::log2(1.0 + g.r1), std::log2(1.0 + g.d));
    }

    inline double rel_err(double a, double b)
    {
        const double s = std::max(std::abs(a), std::abs(b));
        return s == 0.0 ? 0.0 : std::abs(a - b) / s;
    }
}

#endif
