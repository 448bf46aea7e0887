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

#ifndef SRRIS_PSO_HPP
#define SRRIS_PSO_HPP

#include <cstdint>
#include <numbers>
#include <vector>

#include "srris/sinr.hpp"

namespace srris
{
    // How the uniform factors r1, r2 of the velocity update are drawn.
    enum class RandomDraw
    {
        PerElement, // one (r1, r2) pair per (particle, phase)
        PerParticle // one pair per particle, shared by its 2M phases
    };

    struct PsoParams
    {
        int N = 100;
        int T = 200;
        double mu = std::numbers::pi / 8.0;
        double w1 = 2.0;
        double w2 = 2.0;
        std::uint64_t seed = 0;
        RandomDraw draw = RandomDraw::PerElement;
        bool check_invariants = true; // count bound violations inside the loop

        // Throws ConfigError naming the offending field.
        void validate(const std::string &path = "pso") const;
    };

    // Particles are rows: F and X are N x 2M.
    struct PsoState
    {
        RMatrix F;
        RMatrix X;
        RVector fitness; // min SINR, linear
        PhaseVector best_particle;
        double best_fitness = -1.0;
        int t = 0;
    };

    PsoState init_population(const PsoParams &params, int num_phases, Rng &rng);

    // lambda_n = min{gamma_r1, gamma_d} for every row of F. Rows may hold any real angles.
    RVector evaluate_fitness(const RMatrix &F, const ChannelRealization &real, const LinkBudget &b);

    struct Bests
    {
        RMatrix L;        // row n: best of particles n - 1 and n + 1 on the ring
        int global = 0;   // argmax of the fitness
    };

    // Ties go to the lower particle index.
    Bests find_bests(const RMatrix &F, const RVector &fitness);

    RMatrix update_velocities(const RMatrix &X, const RMatrix &F, const Bests &bests, double w1, double w2,
                              RandomDraw draw, Rng &rng);

    // Column m is scaled by mu / max|X[:, m]|; all-zero columns stay zero.
    RMatrix normalize_velocities(const RMatrix &X_raw, double mu);

    // F + X with one 2 pi correction per entry back into [-pi, pi].
    RMatrix step_positions(const RMatrix &F, const RMatrix &X_new);

    struct PsoInvariantCounts
    {
        long long phase_out_of_range = 0;
        long long velocity_above_mu = 0;
        long long checks = 0;

        long long violations() const { return phase_out_of_range + velocity_above_mu; }
        PsoInvariantCounts &operator+=(const PsoInvariantCounts &o)
        {
            phase_out_of_range += o.phase_out_of_range;
            velocity_above_mu += o.velocity_above_mu;
            checks += o.checks;
            return *this;
        }
    };

    struct PsoResult
    {
        PhaseVector theta;
        double fitness = 0.0;
        double rate = 0.0;
        std::vector<double> trace_fitness; // best so far after iteration t = 0..T
        std::vector<double> trace_rate;
        PsoInvariantCounts invariants;
    };

    PsoResult run_pso(const ChannelRealization &real, const LinkBudget &b, const PsoParams &params);
}

#endif
