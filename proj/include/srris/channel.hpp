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

#ifndef SRRIS_CHANNEL_HPP
#define SRRIS_CHANNEL_HPP

#include <complex>

#include <Eigen/Dense>

#include "srris/random.hpp"
#include "srris/scenario.hpp"

namespace srris
{
    using cplx = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;
    using RVector = Eigen::VectorXd;
    using RMatrix = Eigen::MatrixXd;

    struct PathLoss
    {
        double los = 2.3;
        double nlos = 3.5;
    };

    /*!
     * One draw of every link in the network.
     *
     * Naming follows "<from><to>", e.g. h_si1 is S -> I1 and h_i1r1 is I1 -> R1.
     * The four stacked 2M-vectors hold the I1 sub-vector in their first M entries
     * and the I2 sub-vector in the last M entries.
     */
    struct ChannelRealization
    {
        cplx h_sr1{};
        cplx h_r2r1{};
        cplx h_r2d{};

        CVector h_si1, h_si2;
        CVector h_i1r1, h_i2r1;
        CVector h_r2i1, h_r2i2;
        CVector h_i1d, h_i2d;

        CVector h_si;  // [h_si1; h_si2]
        CVector h_ir1; // [h_i1r1; h_i2r1]
        CVector h_r2i; // [h_r2i1; h_r2i2]
        CVector h_id;  // [h_i1d; h_i2d]

        int elements_per_surface() const { return static_cast<int>(h_si1.size()); }
        int num_phases() const { return static_cast<int>(h_si.size()); }

        // Rebuilds the stacked vectors from the per-surface vectors.
        void restack();

        // A copy with every surface-related vector set to zero (direct links kept).
        ChannelRealization without_surfaces() const;
    };

    // sqrt(k/(k+1)) * LoS + sqrt(1/(k+1)) * NLoS. LoS entries have magnitude d^(-los/2) and i.i.d.
    // uniform phases; NLoS entries are CN(0, d^(-nlos)). k_r = +inf yields the pure LoS vector.
    CVector sample_rician_vector(double d, int M, double k_r, PathLoss alphas, Rng &rng);

    // CN(0, d^(-alpha_nlos)).
    cplx sample_rayleigh_scalar(double d, double alpha_nlos, Rng &rng);

    // Draws all ten links of the scenario. Pure function of (scenario, rng state).
    ChannelRealization sample_realization(const Scenario &sc, Rng &rng);

    // Builds a realization from explicit per-surface vectors; sizes must agree.
    ChannelRealization make_realization(cplx h_sr1, cplx h_r2r1, cplx h_r2d, CVector h_si1, CVector h_si2,
                                        CVector h_i1r1, CVector h_i2r1, CVector h_r2i1, CVector h_r2i2,
                                        CVector h_i1d, CVector h_i2d);
}

#endif
