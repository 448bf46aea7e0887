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

#ifndef SRRIS_SDP_HPP
#define SRRIS_SDP_HPP

#include <array>
#include <vector>

#include "srris/errors.hpp"
#include "srris/sinr.hpp"

namespace srris
{
    /*!
     * Semidefinite-relaxation design of the surface phases.
     *
     * The max-min rate problem is lifted to V = conj(v) v^T, v = [exp(j theta); 1], and the
     * rank-one constraint is dropped. The two ratios are handled with exponential slacks
     * e^{s_i} <= A_i(V) + sigma2 and e^{u_i} >= B_i(V) + sigma2, where A_i are the total received
     * powers and B_i the interference powers at R1 (i = 0) and D (i = 1). The concave side
     * e^{u_i} is linearized around u_bar_i and refined by successive approximation.
     *
     * Each approximation is solved with s_i and u_i eliminated in closed form,
     *
     *   maximize   min_i  ln(A_i(V) + sigma2) - (B_i(V) + sigma2) e^{-u_bar_i} + 1 - u_bar_i
     *   subject to V >= 0, diag(V) = 1,
     *
     * by a log-det barrier method whose Newton steps cost O((2M+1)^3): the objective depends on V
     * only through four rank-one traces, so the KKT system collapses to 2M + 10 unknowns.
     */

    using Pair = std::array<double, 2>;

    struct InnerOptions
    {
        double newton_tol = 1e-8;   // stop centering when lambda^2 / 2 <= newton_tol
        double gap_tol = 1e-7;      // stop when (n + 2) / t < gap_tol
        double t_initial = 1.0;
        double t_factor = 10.0;
        int max_newton_per_center = 200;
        int max_newton_total = 2000;
    };

    struct SdpOptions
    {
        double epsilon = 1e-3;      // outer stop: err^(k) < epsilon
        int max_outer = 50;
        double damping_threshold = 1e-6;
        int num_randomizations = 500;
        InnerOptions inner;
    };

    // Iterate of the successive approximation.
    struct SdpState
    {
        CMatrix V;
        Pair s{};
        Pair u{};
        Pair u_bar{};
        int k = 0;
        double err = 0.0;
    };

    struct InnerSolution
    {
        CMatrix V;
        Pair s{};
        Pair u{};
        double objective = 0.0; // min_i (s_i - u_i), nats
        int newton_steps = 0;
        double gap_bound = 0.0; // (n + 2) / t at exit
    };

    // Raised when a barrier solve exhausts its Newton budget; carries the last iterate.
    class InnerSolveFailure : public SolverError
    {
    public:
        InnerSolveFailure(const std::string &what, CMatrix last) : SolverError(what), last_iterate(std::move(last)) {}
        CMatrix last_iterate;
    };

    // u_bar^(0) = (ln(p_r2 tr(V Q_r2r1) + sigma2), ln(p_s tr(V Q_sd) + sigma2)).
    Pair init_linearization(const QuadraticForms &qf, const CMatrix &V_tilde, const LinkBudget &b);

    // Feasible lifted matrix from uniformly random phases.
    CMatrix random_feasible_lift(int num_phases, Rng &rng);

    InnerSolution solve_inner(const QuadraticForms &qf, const Pair &u_bar, const LinkBudget &b,
                              const InnerOptions &opts = {});

    /*!
     * Dual certificate for the relaxed max-min SINR.
     *
     * For lambda in [0, 1] and a level gamma let C = lambda (P_1 - gamma R_1) + (1 - lambda)(P_2 - gamma R_2),
     * where P_i and R_i are the desired and interfering lifted forms. If
     * max_{V >= 0, diag V = 1} tr(C V) <= gamma sigma2, no relaxed V reaches min SINR > gamma. The inner
     * maximum is bounded through any z with diag(z) - C >= 0; z is read off V and shifted by the most
     * negative eigenvalue.
     */
    struct CertifiedBound
    {
        double gamma = 0.0;   // certified upper bound on the relaxed max-min SINR
        double lambda = 0.0;  // weight on the R1 constraint
        double attained = 0.0; // min SINR of the V the certificate was built from
        bool certified = false;
    };

    CertifiedBound certify_upper_bound(const QuadraticForms &qf, const CMatrix &V, const LinkBudget &b);

    struct SuccessiveResult
    {
        SdpState state;             // final iterate (V*, s, u, u_bar, k, err)
        double objective = 0.0;     // nats, final linearized objective
        double relaxed_rate = 0.0;  // log2(1 + min SINR) evaluated on V* via the trace forms
        double upper_bound_rate = 0.0; // log2(1 + certified gamma); never below relaxed_rate
        bool converged = false;
        bool certified = false;
        int iterations = 0;
        int damping_events = 0;
        int newton_steps = 0;
        std::vector<double> objective_history; // nats, one per accepted solve
        std::vector<double> err_history;
    };

    SuccessiveResult run_successive_approximation(const QuadraticForms &qf, const LinkBudget &b, const SdpOptions &opts, Rng &rng);

    struct RankOneExtraction
    {
        PhaseVector theta;
        double rate = 0.0;
        bool exact_rank_one = false;
    };

    // Recovers unit-modulus phases from the relaxed solution: the dominant eigenvector when V* is
    // numerically rank one, otherwise the best of `num_randomizations` Gaussian draws from
    // CN(0, V*) together with the dominant eigenvector.
    RankOneExtraction extract_rank_one(const CMatrix &V_star, const ChannelRealization &real, const LinkBudget &b,
                                       int num_randomizations, Rng &rng);

    struct SdpResult
    {
        double upper_bound_rate = 0.0;
        double relaxed_rate = 0.0;
        bool certified = false;
        PhaseVector theta_feasible;
        double feasible_rate = 0.0;
        int iterations = 0;
        double rank_gap = 0.0; // feasible_rate / upper_bound_rate (1 when both are zero)
        bool converged = false;
        int damping_events = 0;
        double objective_nats = 0.0;
    };

    // Full pipeline: successive approximation followed by rank-one extraction.
    SdpResult solve_sdp(const ChannelRealization &real, const LinkBudget &b, const SdpOptions &opts, Rng &rng);
}

#endif
