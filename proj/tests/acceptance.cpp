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

// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers as arguments to run
// a subset, e.g. `acceptance 1 2 9`. Exit status is nonzero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <string>

#include "srris/experiment.hpp"

using namespace srris;

namespace
{
    constexpr double pi = std::numbers::pi;
    constexpr std::uint64_t kSeed = 20240601;
    const double kSnrCycle[] = {0.0, 10.0, 20.0, 30.0, 40.0, 50.0, 60.0};

    struct Verdict
    {
        bool pass = false;
        std::string detail;
    };

    std::string fmt(const char *f, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, args...);
        return buf;
    }

    double seconds_since(std::chrono::steady_clock::time_point t0)
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    struct Instance
    {
        Scenario sc;
        ChannelRealization real;
    };

    Instance draw(int M, double snr_db, std::uint64_t stream, int i)
    {
        Instance in;
        in.sc.M = M;
        in.sc.set_snr_db(snr_db);
        Rng rng(derive_seed(kSeed, {stream, static_cast<std::uint64_t>(i)}));
        in.real = sample_realization(in.sc, rng);
        return in;
    }

    PsoInvariantCounts pso_invariants; // accumulated over criteria 2 to 6

    Verdict criterion1()
    {
        const auto t0 = std::chrono::steady_clock::now();
        int pairs = 0;
        double worst = 0.0;
        for (int M : {1, 4, 16})
            for (int i = 0; i < 400; ++i)
            {
                const Instance in = draw(M, kSnrCycle[i % 7], 1, M * 1000 + i);
                Rng rng(derive_seed(kSeed, {11, static_cast<std::uint64_t>(M), static_cast<std::uint64_t>(i)}));
                RVector th(2 * M);
                for (int m = 0; m < 2 * M; ++m)
                    th[m] = rng.uniform(-pi, pi);
                const PhaseVector theta(th);
                const LinkBudget b = in.sc.budget();
                const SinrPair direct = sinr_both(in.real, theta, b);
                const QuadraticForms qf = build_quadratics(in.real);
                const CMatrix V = lift(theta);
                const double t_r1 = sinr_trace_form(qf, V, Receiver::R1, b);
                const double t_d = sinr_trace_form(qf, V, Receiver::D, b);
                worst = std::max(worst, std::abs(t_r1 - direct.r1) / direct.r1);
                worst = std::max(worst, std::abs(t_d - direct.d) / direct.d);
                ++pairs;
            }
        const double secs = seconds_since(t0);
        return {pairs >= 1000 && worst <= 1e-9 && secs < 10.0,
                fmt("form equivalence: %d pairs at M in {1,4,16}, max rel err %.3g (tol 1e-9), %.2f s (limit 10 s)", pairs,
                    worst, secs)};
    }

    // Smallest rate over the 3^(2M) grid neighbours (one step per coordinate) of the oracle argmax.
    double one_step_floor(const Instance &in, const PhaseVector &best, int levels)
    {
        const int n = best.size();
        const double step = 2.0 * pi / levels;
        double lo = 1e300;
        int combos = 1;
        for (int i = 0; i < n; ++i)
            combos *= 3;
        for (int c = 0; c < combos; ++c)
        {
            RVector th(n);
            int code = c;
            for (int i = 0; i < n; ++i, code /= 3)
                th[i] = wrap_phase(best[i] + (code % 3 - 1) * step);
            lo = std::min(lo, effective_rate(sinr_both(in.real, PhaseVector(th), in.sc.budget())));
        }
        return lo;
    }

    Verdict criterion2()
    {
        const auto t0 = std::chrono::steady_clock::now();
        int pso_ok = 0, ub_ok = 0;
        double worst_ub = 1e300;
        const OracleConfig oc; // 64 levels
        for (int i = 0; i < 100; ++i)
        {
            const Instance in = draw(1, kSnrCycle[i % 7], 2, i);
            const LinkBudget b = in.sc.budget();
            const OracleResult orc = brute_force_search(in.real, b, oc);

            PsoParams pp;
            pp.N = 50;
            pp.T = 200;
            pp.mu = pi / 8;
            pp.seed = derive_seed(kSeed, {21, static_cast<std::uint64_t>(i)});
            const PsoResult pso = run_pso(in.real, b, pp);
            pso_invariants += pso.invariants;
            if (pso.rate >= one_step_floor(in, orc.theta, oc.levels))
                ++pso_ok;

            Rng rng(derive_seed(kSeed, {22, static_cast<std::uint64_t>(i)}));
            const SdpResult sdp = solve_sdp(in.real, b, SdpOptions{}, rng);
            worst_ub = std::min(worst_ub, sdp.upper_bound_rate - orc.rate);
            if (sdp.upper_bound_rate >= orc.rate)
                ++ub_ok;
        }
        const double secs = seconds_since(t0);
        return {pso_ok >= 95 && ub_ok == 100 && secs < 120.0,
                fmt("oracle equivalence at 2M = 2: PSO within one grid step on %d/100 (need 95), SDP bound >= oracle on "
                    "%d/100 (need 100, min margin %.3g), %.1f s (limit 120 s)",
                    pso_ok, ub_ok, worst_ub, secs)};
    }

    Verdict criterion3()
    {
        int violations = 0;
        double worst = -1e300;
        for (int i = 0; i < 100; ++i)
        {
            const Instance in = draw(8, kSnrCycle[i % 7], 3, i);
            const LinkBudget b = in.sc.budget();
            PsoParams pp;
            pp.seed = derive_seed(kSeed, {31, static_cast<std::uint64_t>(i)});
            const PsoResult pso = run_pso(in.real, b, pp);
            pso_invariants += pso.invariants;
            Rng rng(derive_seed(kSeed, {32, static_cast<std::uint64_t>(i)}));
            const SdpResult sdp = solve_sdp(in.real, b, SdpOptions{}, rng);
            const double excess = std::max(pso.rate, sdp.feasible_rate) - sdp.upper_bound_rate;
            worst = std::max(worst, excess);
            if (excess > 1e-6)
                ++violations;
        }
        return {violations == 0,
                fmt("relaxation dominance at M = 8: %d/100 violations, largest max(pso, feasible) - bound = %.3g "
                    "(tol 1e-6)",
                    violations, worst)};
    }

    std::map<std::pair<Scheme, int>, double> means_by(const std::vector<PlotPoint> &pts, double snr)
    {
        std::map<std::pair<Scheme, int>, double> out;
        for (const PlotPoint &p : pts)
            if (p.snr_db == snr)
                out[{p.scheme, p.M}] = p.mean_rate;
        return out;
    }

    Verdict criterion4()
    {
        const auto t0 = std::chrono::steady_clock::now();
        SweepConfig cfg;
        cfg.seed = kSeed;
        cfg.m_list = {16, 32};
        cfg.snr_grid_db = {40.0};
        cfg.trials = 200;
        cfg.schemes = {Scheme::SdpUpper, Scheme::Pso};
        const auto rows = run_sweep(cfg, 1, &pso_invariants);
        auto m = means_by(emit_plotdata(rows, cfg), 40.0);
        const double r16 = m[{Scheme::Pso, 16}] / m[{Scheme::SdpUpper, 16}];
        const double r32 = m[{Scheme::Pso, 32}] / m[{Scheme::SdpUpper, 32}];
        return {r16 >= 0.93 && r32 >= 0.93,
                fmt("PSO-SDP gap at 40 dB, 200 trials: mean pso / mean bound = %.4f (M = 16), %.4f (M = 32), need >= "
                    "0.93; %.0f s",
                    r16, r32, seconds_since(t0))};
    }

    // SNR (dB) at which a mean-rate curve first reaches `level`, by linear interpolation; NaN if never.
    double crossing(const std::vector<double> &snr, const std::vector<double> &rate, double level)
    {
        for (std::size_t i = 1; i < snr.size(); ++i)
            if (rate[i - 1] < level && rate[i] >= level)
                return snr[i - 1] + (level - rate[i - 1]) * (snr[i] - snr[i - 1]) / (rate[i] - rate[i - 1]);
        return rate.empty() || rate[0] < level ? std::nan("") : snr[0];
    }

    Verdict criterion5()
    {
        const auto t0 = std::chrono::steady_clock::now();
        SweepConfig cfg;
        cfg.seed = kSeed;
        cfg.m_list = {32};
        cfg.trials = 200;
        cfg.schemes = {Scheme::Pso, Scheme::RisOnly, Scheme::SrNoRis};
        const auto pts = emit_plotdata(run_sweep(cfg, 1, &pso_invariants), cfg);

        std::vector<double> snr, sr, ris, relay;
        for (double s : cfg.snr_grid_db)
        {
            auto m = means_by(pts, s);
            snr.push_back(s);
            sr.push_back(m[{Scheme::Pso, 32}]);
            ris.push_back(m[{Scheme::RisOnly, 32}]);
            relay.push_back(m[{Scheme::SrNoRis, 32}]);
        }
        int order_bad = 0;
        for (std::size_t i = 0; i < snr.size(); ++i)
            if (snr[i] >= 20.0 && !(sr[i] > ris[i] && ris[i] > relay[i]))
                ++order_bad;
        const double x_sr = crossing(snr, sr, 4.0), x_ris = crossing(snr, ris, 4.0);
        const double gap = x_ris - x_sr;
        const bool gap_ok = std::isfinite(gap) && std::abs(gap - 15.0) <= 3.0;
        return {order_bad == 0 && gap_ok,
                fmt("ordering at M = 32 for SNR >= 20 dB: %d grid points out of order; 4 bit/s/Hz reached at %.2f dB "
                    "(RIS-assisted SR) and %.2f dB (RIS only), gain %.2f dB (need 15 +- 3); %.0f s",
                    order_bad, x_sr, x_ris, gap, seconds_since(t0))};
    }

    Verdict criterion6()
    {
        SweepConfig cfg;
        cfg.seed = kSeed;
        cfg.trials = 50;
        cfg.pso.T = 200;
        cfg.convergence.N = 50;
        cfg.convergence.snr_db = 50.0;
        cfg.convergence.m_list = {32};
        cfg.convergence.mu_list = {pi / 8, pi};
        const auto rows = run_convergence(cfg, 1, &pso_invariants);
        double small = 0.0, large = 0.0, small10 = 0.0, large10 = 0.0;
        for (const ConvergenceRow &r : rows)
        {
            const bool is_small = r.mu < 1.0;
            if (r.t == cfg.pso.T)
                (is_small ? small : large) = r.mean_best_rate;
            if (r.t == 10)
                (is_small ? small10 : large10) = r.mean_best_rate;
        }
        return {small > large, fmt("mu behaviour at M = 32, N = 50, 50 dB, T = 200, 50 trials: final mean %.4f (mu = "
                                   "pi/8) vs %.4f (mu = pi); at t = 10: %.4f vs %.4f (recorded only)",
                                   small, large, small10, large10)};
    }

    Verdict criterion7()
    {
        return {pso_invariants.checks > 0 && pso_invariants.violations() == 0,
                fmt("PSO bounds over criteria 2-6: %lld iteration checks, %lld phases outside [-pi, pi], %lld "
                    "velocities above mu",
                    pso_invariants.checks, pso_invariants.phase_out_of_range, pso_invariants.velocity_above_mu)};
    }

    Verdict criterion8()
    {
        int converged = 0, monotone_bad = 0, damped_instances = 0, damping = 0, max_iter = 0;
        for (int i = 0; i < 100; ++i)
        {
            const int M = 1 << (i % 5); // 1, 2, 4, 8, 16
            const Instance in = draw(M, kSnrCycle[i % 7], 8, i);
            Rng rng(derive_seed(kSeed, {81, static_cast<std::uint64_t>(i)}));
            const SuccessiveResult res = run_successive_approximation(build_quadratics(in.real), in.sc.budget(), SdpOptions{}, rng);
            if (res.converged && res.state.err < 1e-3 && res.iterations <= 30)
                ++converged;
            max_iter = std::max(max_iter, res.iterations);
            for (std::size_t k = 1; k < res.objective_history.size(); ++k)
                if (res.objective_history[k] < res.objective_history[k - 1] - 1e-6)
                {
                    ++monotone_bad;
                    break;
                }
            damping += res.damping_events;
            damped_instances += res.damping_events > 0;
        }
        return {converged >= 95 && monotone_bad == 0 && damped_instances <= 5,
                fmt("outer convergence at M <= 16: %d/100 reach err < 1e-3 within 30 iterations (need 95), max %d "
                    "iterations; %d instances with an objective drop > 1e-6; damping engaged %d times on %d instances "
                    "(allowed on <= 5)",
                    converged, max_iter, monotone_bad, damping, damped_instances)};
    }

    Verdict criterion9()
    {
        SweepConfig cfg;
        cfg.seed = kSeed;
        cfg.m_list = {1, 4};
        cfg.snr_grid_db = {0.0, 30.0, 60.0};
        cfg.trials = 4;
        cfg.pso.T = 50;
        const std::string a = sweep_csv(run_sweep(cfg, 1));
        const std::string b = sweep_csv(run_sweep(cfg, 1));
        const std::string c = sweep_csv(run_sweep(cfg, 4));
        return {a == b && a == c, fmt("determinism: repeated sweep %s, 4-thread sweep %s (%zu bytes)",
                                      a == b ? "identical" : "DIFFERS", a == c ? "identical" : "DIFFERS", a.size())};
    }
}

int main(int argc, char **argv)
{
    const std::function<Verdict()> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                 criterion6, criterion7, criterion8, criterion9};
    std::set<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.insert(std::atoi(argv[i]));

    int failed = 0;
    for (int k = 1; k <= 9; ++k)
    {
        if (!selected.empty() && !selected.count(k))
            continue;
        Verdict v;
        try
        {
            v = criteria[k - 1]();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("criterion %d: %s  %s\n", k, v.pass ? "PASS" : "FAIL", v.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
