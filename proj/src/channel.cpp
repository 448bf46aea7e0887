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

#include "srris/channel.hpp"
#include "srris/errors.hpp"

#include <cmath>
#include <string>

namespace srris
{
    namespace
    {
        CVector stack(const CVector &top, const CVector &bottom)
        {
            CVector out(top.size() + bottom.size());
            out << top, bottom;
            return out;
        }

        void check_distance(double d)
        {
            if (!(d > 0.0) || !std::isfinite(d))
                throw DomainError("link distance must be finite and > 0, got " + std::to_string(d));
        }
    }

    void ChannelRealization::restack()
    {
        h_si = stack(h_si1, h_si2);
        h_ir1 = stack(h_i1r1, h_i2r1);
        h_r2i = stack(h_r2i1, h_r2i2);
        h_id = stack(h_i1d, h_i2d);
    }

    ChannelRealization ChannelRealization::without_surfaces() const
    {
        ChannelRealization out = *this;
        for (CVector *v : {&out.h_si1, &out.h_si2, &out.h_i1r1, &out.h_i2r1, &out.h_r2i1, &out.h_r2i2, &out.h_i1d,
                           &out.h_i2d})
            v->setZero();
        out.restack();
        return out;
    }

    CVector sample_rician_vector(double d, int M, double k_r, PathLoss alphas, Rng &rng)
    {
        check_distance(d);
        require(M >= 1, "sample_rician_vector: M must be >= 1");
        require(k_r >= 0.0, "sample_rician_vector: k_r must be >= 0");

        const double los_amp = std::pow(d, -alphas.los / 2.0);
        const double nlos_var = std::pow(d, -alphas.nlos);
        const bool los_only = std::isinf(k_r);
        const double w_los = los_only ? 1.0 : std::sqrt(k_r / (k_r + 1.0));
        const double w_nlos = los_only ? 0.0 : std::sqrt(1.0 / (k_r + 1.0));

        CVector h(M);
        for (int m = 0; m < M; ++m)
        {
            const cplx los = los_amp * rng.unit_phasor();
            const cplx nlos = rng.complex_normal(nlos_var);
            h[m] = w_los * los + w_nlos * nlos;
        }
        return h;
    }

    cplx sample_rayleigh_scalar(double d, double alpha_nlos, Rng &rng)
    {
        check_distance(d);
        return rng.complex_normal(std::pow(d, -alpha_nlos));
    }

    ChannelRealization sample_realization(const Scenario &sc, Rng &rng)
    {
        const PathLoss pl{sc.alpha_los, sc.alpha_nlos};
        auto dist = [&](Node a, Node b) { return link_distance(sc, a, b); };
        auto rician = [&](Node a, Node b) { return sample_rician_vector(dist(a, b), sc.M, sc.k_r, pl, rng); };

        ChannelRealization r;
        // Fixed draw order: the realization is a pure function of the seed.
        r.h_sr1 = sample_rayleigh_scalar(dist(Node::S, Node::R1), sc.alpha_nlos, rng);
        r.h_r2d = sample_rayleigh_scalar(dist(Node::R2, Node::D), sc.alpha_nlos, rng);
        if (sc.iri_fading == Fading::Rician)
            r.h_r2r1 = sample_rician_vector(dist(Node::R2, Node::R1), 1, sc.k_r, pl, rng)[0];
        else
            r.h_r2r1 = sample_rayleigh_scalar(dist(Node::R2, Node::R1), sc.alpha_nlos, rng);

        r.h_si1 = rician(Node::S, Node::I1);
        r.h_i1r1 = rician(Node::I1, Node::R1);
        r.h_r2i1 = rician(Node::R2, Node::I1);
        r.h_i1d = rician(Node::I1, Node::D);
        r.h_si2 = rician(Node::S, Node::I2);
        r.h_i2r1 = rician(Node::I2, Node::R1);
        r.h_r2i2 = rician(Node::R2, Node::I2);
        r.h_i2d = rician(Node::I2, Node::D);
        r.restack();
        return r;
    }

    ChannelRealization make_realization(cplx h_sr1, cplx h_r2r1, cplx h_r2d, CVector h_si1, CVector h_si2,
                                        CVector h_i1r1, CVector h_i2r1, CVector h_r2i1, CVector h_r2i2,
                                        CVector h_i1d, CVector h_i2d)
    {
        const auto M = h_si1.size();
        for (const CVector *v : {&h_si2, &h_i1r1, &h_i2r1, &h_r2i1, &h_r2i2, &h_i1d, &h_i2d})
            require(v->size() == M, "make_realization: all surface vectors must have the same length");
        require(M >= 1, "make_realization: surfaces need at least one element");

        ChannelRealization r;
        r.h_sr1 = h_sr1;
        r.h_r2r1 = h_r2r1;
        r.h_r2d = h_r2d;
        r.h_si1 = std::move(h_si1);
        r.h_si2 = std::move(h_si2);
        r.h_i1r1 = std::move(h_i1r1);
        r.h_i2r1 = std::move(h_i2r1);
        r.h_r2i1 = std::move(h_r2i1);
        r.h_r2i2 = std::move(h_r2i2);
        r.h_i1d = std::move(h_i1d);
        r.h_i2d = std::move(h_i2d);
        r.restack();
        return r;
    }
}
