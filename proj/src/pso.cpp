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

#include "srris/pso.hpp"
#include "srris/errors.hpp"

#include <cmath>
#include <string>

namespace srris
{
    namespace
    {
        constexpr double pi = std::numbers::pi;
    }

    void PsoParams::validate(const std::string &path) const
    {
        if (N < 3)
            throw ConfigError(path + ".N: ring topology needs N >= 3, got " + std::to_string(N));
        if (T < 0)
            throw ConfigError(path + ".T: must be >= 0, got " + std::to_string(T));
        if (!(mu > 0.0 && mu <= pi))
            throw ConfigError(path + ".mu: must lie in (0, pi], got " + std::to_string(mu));
        if (!(w1 >= 0.0) || !std::isfinite(w1))
            throw ConfigError(path + ".w1: must be finite and >= 0");
        if (!(w2 >= 0.0) || !std::isfinite(w2))
            throw ConfigError(path + ".w2: must be finite and >= 0");
    }

    PsoState init_population(const PsoParams &params, int num_phases, Rng &rng)
    {
        params.validate();
        require(num_phases >= 1, "init_population: need at least one phase");
        PsoState s;
        s.F.resize(params.N, num_phases);
        for (int n = 0; n < params.N; ++n)
            for (int m = 0; m < num_phases; ++m)
                s.F(n, m) = rng.uniform(-pi, pi);
        s.X = RMatrix::Zero(params.N, num_phases);
        return s;
    }

    RVector evaluate_fitness(const RMatrix &F, const ChannelRealization &real, const LinkBudget &b)
    {
        require(F.cols() == real.num_phases(), "evaluate_fitness: particle length does not match 2M");
        RVector fit(F.rows());
        CVector refl(F.cols());
        for (Eigen::Index n = 0; n < F.rows(); ++n)
        {
            for (Eigen::Index m = 0; m < F.cols(); ++m)
                refl[m] = std::polar(1.0, F(n, m));
            fit[n] = sinr_both(real, refl, b).min();
        }
        return fit;
    }

    Bests find_bests(const RMatrix &F, const RVector &fitness)
    {
        const int N = static_cast<int>(F.rows());
        require(N >= 3 && fitness.size() == N, "find_bests: need N >= 3 particles with one fitness each");
        Bests out;
        out.L.resize(F.rows(), F.cols());
        for (int n = 0; n < N; ++n)
        {
            const int prev = (n + N - 1) % N;
            const int next = (n + 1) % N;
            const int lo = std::min(prev, next), hi = std::max(prev, next);
            out.L.row(n) = F.row(fitness[hi] > fitness[lo] ? hi : lo);
        }
        for (int n = 1; n < N; ++n)
            if (fitness[n] > fitness[out.global])
                out.global = n;
        return out;
    }

    RMatrix update_velocities(const RMatrix &X, const RMatrix &F, const Bests &bests, double w1, double w2,
                              RandomDraw draw, Rng &rng)
    {
        RMatrix out(X.rows(), X.cols());
        const auto g = F.row(bests.global);
        for (Eigen::Index n = 0; n < X.rows(); ++n)
        {
            double r1 = 0.0, r2 = 0.0;
            if (draw == RandomDraw::PerParticle)
            {
                r1 = rng.uniform();
                r2 = rng.uniform();
            }
            for (Eigen::Index m = 0; m < X.cols(); ++m)
            {
                if (draw == RandomDraw::PerElement)
                {
                    r1 = rng.uniform();
                    r2 = rng.uniform();
                }
                out(n, m) = X(n, m) + w1 * r1 * (bests.L(n, m) - F(n, m)) + w2 * r2 * (g[m] - F(n, m));
            }
        }
        return out;
    }

    RMatrix normalize_velocities(const RMatrix &X_raw, double mu)
    {
        require(mu > 0.0 && mu <= pi, "normalize_velocities: mu must lie in (0, pi]");
        RMatrix out = X_raw;
        for (Eigen::Index m = 0; m < out.cols(); ++m)
        {
            const double peak = out.col(m).cwiseAbs().maxCoeff();
            if (peak == 0.0)
                continue;
            // mu * (x / peak) keeps |x / peak| <= 1 exactly, so the result never exceeds mu.
            for (Eigen::Index n = 0; n < out.rows(); ++n)
                out(n, m) = mu * (out(n, m) / peak);
        }
        return out;
    }

    RMatrix step_positions(const RMatrix &F, const RMatrix &X_new)
    {
        require(F.rows() == X_new.rows() && F.cols() == X_new.cols(), "step_positions: shape mismatch");
        RMatrix out = F + X_new;
        for (Eigen::Index i = 0; i < out.size(); ++i)
        {
            double &v = out.data()[i];
            if (v < -pi)
                v += 2.0 * pi;
            else if (v > pi)
                v -= 2.0 * pi;
        }
        return out;
    }

    PsoResult run_pso(const ChannelRealization &real, const LinkBudget &b, const PsoParams &params)
    {
        params.validate();
        Rng rng(params.seed);
        PsoState s = init_population(params, real.num_phases(), rng);
        PsoResult res;
        res.trace_fitness.reserve(params.T + 1);
        res.trace_rate.reserve(params.T + 1);

        auto check = [&](const RMatrix &F, const RMatrix *X) {
            if (!params.check_invariants)
                return;
            ++res.invariants.checks;
            res.invariants.phase_out_of_range += ((F.array() < -pi) || (F.array() > pi)).count();
            if (X)
                res.invariants.velocity_above_mu += (X->array().abs() > params.mu).count();
        };

        auto record = [&]() {
            s.fitness = evaluate_fitness(s.F, real, b);
            Eigen::Index arg = 0;
            for (Eigen::Index n = 1; n < s.fitness.size(); ++n)
                if (s.fitness[n] > s.fitness[arg])
                    arg = n;
            if (s.fitness[arg] > s.best_fitness)
            {
                s.best_fitness = s.fitness[arg];
                s.best_particle = PhaseVector(s.F.row(arg).transpose());
            }
            res.trace_fitness.push_back(s.best_fitness);
            res.trace_rate.push_back(std::log2(1.0 + s.best_fitness));
        };

        check(s.F, nullptr);
        record();
        for (s.t = 1; s.t <= params.T; ++s.t)
        {
            const Bests bests = find_bests(s.F, s.fitness);
            const RMatrix raw = update_velocities(s.X, s.F, bests, params.w1, params.w2, params.draw, rng);
            s.X = normalize_velocities(raw, params.mu);
            s.F = step_positions(s.F, s.X);
            check(s.F, &s.X);
            record();
        }

        res.theta = s.best_particle;
        res.fitness = s.best_fitness;
        res.rate = std::log2(1.0 + s.best_fitness);
        return res;
    }
}
