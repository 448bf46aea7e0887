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

#include "srris/experiment.hpp"
#include "srris/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>
#include <tuple>

namespace srris
{
    namespace
    {
        using nlohmann::json;
        constexpr double pi = std::numbers::pi;

        // Stream tags keep the seed families of different purposes apart.
        enum Stream : std::uint64_t
        {
            kChannel = 1,
            kScheme = 2,
            kConvergence = 3
        };

        std::uint64_t snr_key(double snr_db) { return static_cast<std::uint64_t>(std::llround(snr_db * 1000.0)); }

        double number(const json &v, const std::string &path)
        {
            if (!v.is_number())
                throw ConfigError(path + ": expected a number");
            return v.get<double>();
        }

        int integer(const json &v, const std::string &path)
        {
            if (!v.is_number_integer())
                throw ConfigError(path + ": expected an integer");
            return v.get<int>();
        }

        void expect_object(const json &v, const std::string &path)
        {
            if (!v.is_object())
                throw ConfigError(path + ": expected an object");
        }

        template <typename T, typename F>
        std::vector<T> list(const json &v, const std::string &path, F item)
        {
            if (!v.is_array())
                throw ConfigError(path + ": expected an array");
            std::vector<T> out;
            for (std::size_t i = 0; i < v.size(); ++i)
                out.push_back(item(v[i], path + "[" + std::to_string(i) + "]"));
            return out;
        }

        PsoParams pso_from_json(const json &j, PsoParams p, const std::string &path)
        {
            expect_object(j, path);
            for (auto it = j.begin(); it != j.end(); ++it)
            {
                const std::string k = it.key(), at = path + "." + k;
                if (k == "N")
                    p.N = integer(*it, at);
                else if (k == "T")
                    p.T = integer(*it, at);
                else if (k == "mu")
                    p.mu = number(*it, at);
                else if (k == "w1")
                    p.w1 = number(*it, at);
                else if (k == "w2")
                    p.w2 = number(*it, at);
                else if (k == "draw")
                {
                    const std::string d = it->is_string() ? it->get<std::string>() : "";
                    if (d == "per_element")
                        p.draw = RandomDraw::PerElement;
                    else if (d == "per_particle")
                        p.draw = RandomDraw::PerParticle;
                    else
                        throw ConfigError(at + ": expected \"per_element\" or \"per_particle\"");
                }
                else
                    throw ConfigError(at + ": unknown key");
            }
            return p;
        }

        SdpOptions sdp_from_json(const json &j, SdpOptions o, const std::string &path)
        {
            expect_object(j, path);
            for (auto it = j.begin(); it != j.end(); ++it)
            {
                const std::string k = it.key(), at = path + "." + k;
                if (k == "epsilon")
                    o.epsilon = number(*it, at);
                else if (k == "max_outer")
                    o.max_outer = integer(*it, at);
                else if (k == "damping_threshold")
                    o.damping_threshold = number(*it, at);
                else if (k == "num_randomizations")
                    o.num_randomizations = integer(*it, at);
                else if (k == "gap_tol")
                    o.inner.gap_tol = number(*it, at);
                else if (k == "newton_tol")
                    o.inner.newton_tol = number(*it, at);
                else
                    throw ConfigError(at + ": unknown key");
            }
            return o;
        }

        // Runs fn(i) for i in [0, count) on a small pool; the lowest-index failure is rethrown.
        template <typename F>
        void parallel_for(std::size_t count, int threads, F fn)
        {
            std::vector<std::exception_ptr> errors(count);
            std::atomic<std::size_t> next{0};
            auto worker = [&]() {
                for (std::size_t i = next++; i < count; i = next++)
                {
                    try
                    {
                        fn(i);
                    }
                    catch (...)
                    {
                        errors[i] = std::current_exception();
                    }
                }
            };
            const int n = std::max(1, std::min<int>(threads, static_cast<int>(std::max<std::size_t>(count, 1))));
            if (n == 1)
                worker();
            else
            {
                std::vector<std::thread> pool;
                for (int k = 0; k < n; ++k)
                    pool.emplace_back(worker);
                for (auto &th : pool)
                    th.join();
            }
            for (auto &e : errors)
                if (e)
                    std::rethrow_exception(e);
        }

        Scenario point_scenario(const SweepConfig &cfg, int M, double snr_db)
        {
            Scenario sc = cfg.scenario;
            sc.M = M;
            sc.set_snr_db(snr_db);
            return sc;
        }
    }

    std::string scheme_name(Scheme s)
    {
        switch (s)
        {
        case Scheme::SdpUpper:
            return "sdp_upper";
        case Scheme::Pso:
            return "pso";
        case Scheme::SrNoRis:
            return "sr_no_ris";
        case Scheme::RisOnly:
            return "ris_only";
        case Scheme::Oracle:
            return "oracle";
        }
        return "?";
    }

    Scheme parse_scheme(const std::string &name, const std::string &path)
    {
        for (Scheme s : {Scheme::SdpUpper, Scheme::Pso, Scheme::SrNoRis, Scheme::RisOnly, Scheme::Oracle})
            if (scheme_name(s) == name)
                return s;
        throw ConfigError(path + ": unknown scheme '" + name + "'");
    }

    SweepConfig::SweepConfig()
    {
        for (int s = 0; s <= 60; s += 5)
            snr_grid_db.push_back(s);
        convergence.mu_list = {pi / 8.0, pi / 4.0, pi / 2.0, pi};
    }

    void SweepConfig::validate() const
    {
        scenario.validate();
        if (snr_grid_db.empty())
            throw ConfigError("snr_grid_db: must not be empty");
        for (std::size_t i = 0; i < snr_grid_db.size(); ++i)
            if (!std::isfinite(snr_grid_db[i]))
                throw ConfigError("snr_grid_db[" + std::to_string(i) + "]: must be finite");
        if (m_list.empty())
            throw ConfigError("m_list: must not be empty");
        for (std::size_t i = 0; i < m_list.size(); ++i)
            if (m_list[i] < 1)
                throw ConfigError("m_list[" + std::to_string(i) + "]: must be >= 1");
        if (trials < 1)
            throw ConfigError("trials: must be >= 1, got " + std::to_string(trials));
        if (schemes.empty())
            throw ConfigError("schemes: must not be empty");
        pso.validate("pso");
        oracle.validate("oracle");
        if (!(sdp.epsilon > 0.0))
            throw ConfigError("sdp.epsilon: must be > 0");
        if (sdp.max_outer < 1)
            throw ConfigError("sdp.max_outer: must be >= 1");
        if (!(sdp.damping_threshold >= 0.0))
            throw ConfigError("sdp.damping_threshold: must be >= 0");
        if (sdp.num_randomizations < 0)
            throw ConfigError("sdp.num_randomizations: must be >= 0");
        if (!(sdp.inner.gap_tol > 0.0))
            throw ConfigError("sdp.gap_tol: must be > 0");
        if (!(sdp.inner.newton_tol > 0.0))
            throw ConfigError("sdp.newton_tol: must be > 0");
        if (!std::isfinite(convergence.snr_db))
            throw ConfigError("convergence.snr_db: must be finite");
        if (convergence.N < 3)
            throw ConfigError("convergence.N: ring topology needs N >= 3");
        if (convergence.m_list.empty())
            throw ConfigError("convergence.m_list: must not be empty");
        for (std::size_t i = 0; i < convergence.m_list.size(); ++i)
            if (convergence.m_list[i] < 1)
                throw ConfigError("convergence.m_list[" + std::to_string(i) + "]: must be >= 1");
        if (convergence.mu_list.empty())
            throw ConfigError("convergence.mu_list: must not be empty");
        for (std::size_t i = 0; i < convergence.mu_list.size(); ++i)
            if (!(convergence.mu_list[i] > 0.0 && convergence.mu_list[i] <= pi))
                throw ConfigError("convergence.mu_list[" + std::to_string(i) + "]: must lie in (0, pi]");
    }

    SweepConfig sweep_config_from_json(const json &j)
    {
        expect_object(j, "config");
        SweepConfig cfg;
        for (auto it = j.begin(); it != j.end(); ++it)
        {
            const std::string k = it.key();
            const json &v = *it;
            if (k == "scenario")
                cfg.scenario = scenario_from_json(v, "scenario");
            else if (k == "snr_grid_db")
                cfg.snr_grid_db = list<double>(v, k, number);
            else if (k == "m_list")
                cfg.m_list = list<int>(v, k, integer);
            else if (k == "trials")
                cfg.trials = integer(v, k);
            else if (k == "schemes")
                cfg.schemes = list<Scheme>(v, k, [](const json &e, const std::string &p) {
                    if (!e.is_string())
                        throw ConfigError(p + ": expected a scheme name");
                    return parse_scheme(e.get<std::string>(), p);
                });
            else if (k == "pso")
                cfg.pso = pso_from_json(v, cfg.pso, "pso");
            else if (k == "sdp")
                cfg.sdp = sdp_from_json(v, cfg.sdp, "sdp");
            else if (k == "oracle")
            {
                expect_object(v, "oracle");
                for (auto o = v.begin(); o != v.end(); ++o)
                {
                    if (o.key() == "levels")
                        cfg.oracle.levels = integer(*o, "oracle.levels");
                    else if (o.key() == "max_elements")
                        cfg.oracle.max_elements = integer(*o, "oracle.max_elements");
                    else
                        throw ConfigError("oracle." + o.key() + ": unknown key");
                }
            }
            else if (k == "convergence")
            {
                expect_object(v, "convergence");
                for (auto c = v.begin(); c != v.end(); ++c)
                {
                    const std::string at = "convergence." + c.key();
                    if (c.key() == "snr_db")
                        cfg.convergence.snr_db = number(*c, at);
                    else if (c.key() == "N")
                        cfg.convergence.N = integer(*c, at);
                    else if (c.key() == "m_list")
                        cfg.convergence.m_list = list<int>(*c, at, integer);
                    else if (c.key() == "mu_list")
                        cfg.convergence.mu_list = list<double>(*c, at, number);
                    else
                        throw ConfigError(at + ": unknown key");
                }
            }
            else if (k == "seed")
            {
                if (!v.is_number_unsigned())
                    throw ConfigError("seed: expected a non-negative integer");
                cfg.seed = v.get<std::uint64_t>();
            }
            else
                throw ConfigError(k + ": unknown key");
        }
        cfg.validate();
        return cfg;
    }

    json sweep_config_to_json(const SweepConfig &cfg)
    {
        json schemes = json::array();
        for (Scheme s : cfg.schemes)
            schemes.push_back(scheme_name(s));
        return {
            {"scenario", scenario_to_json(cfg.scenario)},
            {"snr_grid_db", cfg.snr_grid_db},
            {"m_list", cfg.m_list},
            {"trials", cfg.trials},
            {"schemes", schemes},
            {"pso",
             {{"N", cfg.pso.N},
              {"T", cfg.pso.T},
              {"mu", cfg.pso.mu},
              {"w1", cfg.pso.w1},
              {"w2", cfg.pso.w2},
              {"draw", cfg.pso.draw == RandomDraw::PerElement ? "per_element" : "per_particle"}}},
            {"sdp",
             {{"epsilon", cfg.sdp.epsilon},
              {"max_outer", cfg.sdp.max_outer},
              {"damping_threshold", cfg.sdp.damping_threshold},
              {"num_randomizations", cfg.sdp.num_randomizations},
              {"gap_tol", cfg.sdp.inner.gap_tol},
              {"newton_tol", cfg.sdp.inner.newton_tol}}},
            {"oracle", {{"levels", cfg.oracle.levels}, {"max_elements", cfg.oracle.max_elements}}},
            {"convergence",
             {{"snr_db", cfg.convergence.snr_db},
              {"N", cfg.convergence.N},
              {"m_list", cfg.convergence.m_list},
              {"mu_list", cfg.convergence.mu_list}}},
            {"seed", cfg.seed},
        };
    }

    std::uint64_t channel_seed(std::uint64_t master, int M, double snr_db, int trial)
    {
        return derive_seed(master, {kChannel, static_cast<std::uint64_t>(M), snr_key(snr_db),
                                    static_cast<std::uint64_t>(trial)});
    }

    std::uint64_t scheme_seed(std::uint64_t master, Scheme s, int M, double snr_db, int trial)
    {
        return derive_seed(master, {kScheme, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(M),
                                    snr_key(snr_db), static_cast<std::uint64_t>(trial)});
    }

    std::vector<SweepRow> run_sweep(const SweepConfig &cfg, int threads, PsoInvariantCounts *invariants)
    {
        cfg.validate();
        struct Task
        {
            int M;
            double snr;
            int trial;
        };
        std::vector<Task> tasks;
        for (int M : cfg.m_list)
            for (double snr : cfg.snr_grid_db)
                for (int tr = 0; tr < cfg.trials; ++tr)
                    tasks.push_back({M, snr, tr});

        const std::size_t per_task = cfg.schemes.size();
        std::vector<SweepRow> rows(tasks.size() * per_task);
        std::vector<PsoInvariantCounts> counts(tasks.size());
        parallel_for(tasks.size(), threads, [&](std::size_t i) {
            const Task &task = tasks[i];
            Scenario sc = point_scenario(cfg, task.M, task.snr);
            const LinkBudget b = sc.budget();
            const std::uint64_t ch = channel_seed(cfg.seed, task.M, task.snr, task.trial);
            Rng ch_rng(ch);
            const ChannelRealization real = sample_realization(sc, ch_rng);

            for (std::size_t k = 0; k < per_task; ++k)
            {
                const Scheme s = cfg.schemes[k];
                SweepRow row;
                row.scheme = s;
                row.M = task.M;
                row.snr_db = task.snr;
                row.trial = task.trial;
                row.seed_used = scheme_seed(cfg.seed, s, task.M, task.snr, task.trial);
                switch (s)
                {
                case Scheme::SdpUpper:
                {
                    Rng rng(row.seed_used);
                    const SdpResult r = solve_sdp(real, b, cfg.sdp, rng);
                    row.rate_bits = r.upper_bound_rate;
                    row.aux = r.rank_gap;
                    break;
                }
                case Scheme::Pso:
                {
                    PsoParams p = cfg.pso;
                    p.seed = row.seed_used;
                    const PsoResult r = run_pso(real, b, p);
                    row.rate_bits = r.rate;
                    row.aux = r.fitness;
                    counts[i] += r.invariants;
                    break;
                }
                case Scheme::SrNoRis:
                {
                    // Same channel stream, redrawn with a Rayleigh IRI link.
                    Scenario ray = sc;
                    ray.iri_fading = Fading::Rayleigh;
                    Rng rng(ch);
                    row.rate_bits = rate_sr_no_ris(sample_realization(ray, rng), b);
                    break;
                }
                case Scheme::RisOnly:
                    row.rate_bits = rate_ris_only(real, sc.p, sc.sigma2);
                    break;
                case Scheme::Oracle:
                {
                    const OracleResult r = brute_force_search(real, b, cfg.oracle);
                    row.rate_bits = r.rate;
                    row.aux = static_cast<double>(r.evaluated);
                    break;
                }
                }
                rows[i * per_task + k] = row;
            }
        });
        if (invariants)
            for (const auto &c : counts)
                *invariants += c;
        return rows;
    }

    std::vector<PlotPoint> emit_plotdata(const std::vector<SweepRow> &rows, const SweepConfig &cfg)
    {
        using Key = std::tuple<int, int, std::uint64_t>; // scheme, M, snr
        std::map<Key, std::map<int, double>> seen;
        for (const SweepRow &r : rows)
            seen[{static_cast<int>(r.scheme), r.M, snr_key(r.snr_db)}][r.trial] = r.rate_bits;

        std::vector<PlotPoint> out;
        for (Scheme s : cfg.schemes)
            for (int M : cfg.m_list)
                for (double snr : cfg.snr_grid_db)
                {
                    const auto it = seen.find({static_cast<int>(s), M, snr_key(snr)});
                    for (int tr = 0; tr < cfg.trials; ++tr)
                        if (it == seen.end() || !it->second.count(tr))
                            throw AggregationError("missing row for (scheme=" + scheme_name(s) +
                                                   ", M=" + std::to_string(M) + ", snr_db=" + format_number(snr) +
                                                   ", trial=" + std::to_string(tr) + ")");
                    PlotPoint pt;
                    pt.scheme = s;
                    pt.M = M;
                    pt.snr_db = snr;
                    pt.count = cfg.trials;
                    double sum = 0.0;
                    for (int tr = 0; tr < cfg.trials; ++tr)
                        sum += it->second.at(tr);
                    pt.mean_rate = sum / cfg.trials;
                    if (cfg.trials > 1)
                    {
                        double ss = 0.0;
                        for (int tr = 0; tr < cfg.trials; ++tr)
                            ss += (it->second.at(tr) - pt.mean_rate) * (it->second.at(tr) - pt.mean_rate);
                        pt.stderr_rate = std::sqrt(ss / (cfg.trials - 1) / cfg.trials);
                    }
                    out.push_back(pt);
                }
        return out;
    }

    std::vector<ConvergenceRow> run_convergence(const SweepConfig &cfg, int threads, PsoInvariantCounts *invariants)
    {
        cfg.validate();
        const auto &cc = cfg.convergence;
        struct Task
        {
            int M;
            int trial;
        };
        std::vector<Task> tasks;
        for (int M : cc.m_list)
            for (int tr = 0; tr < cfg.trials; ++tr)
                tasks.push_back({M, tr});

        const std::size_t nmu = cc.mu_list.size();
        std::vector<std::vector<double>> traces(tasks.size() * nmu);
        std::vector<PsoInvariantCounts> counts(tasks.size());
        parallel_for(tasks.size(), threads, [&](std::size_t i) {
            const Task &task = tasks[i];
            const Scenario sc = point_scenario(cfg, task.M, cc.snr_db);
            Rng ch_rng(derive_seed(cfg.seed, {kConvergence, kChannel, static_cast<std::uint64_t>(task.M),
                                              static_cast<std::uint64_t>(task.trial)}));
            const ChannelRealization real = sample_realization(sc, ch_rng);
            PsoParams p = cfg.pso;
            p.N = cc.N;
            p.seed = derive_seed(cfg.seed, {kConvergence, kScheme, static_cast<std::uint64_t>(task.M),
                                            static_cast<std::uint64_t>(task.trial)});
            for (std::size_t k = 0; k < nmu; ++k)
            {
                p.mu = cc.mu_list[k];
                PsoResult r = run_pso(real, sc.budget(), p);
                counts[i] += r.invariants;
                traces[i * nmu + k] = std::move(r.trace_rate);
            }
        });
        if (invariants)
            for (const auto &c : counts)
                *invariants += c;

        std::vector<ConvergenceRow> out;
        for (int M : cc.m_list)
            for (std::size_t k = 0; k < nmu; ++k)
                for (int t = 0; t <= cfg.pso.T; ++t)
                {
                    double sum = 0.0;
                    for (std::size_t i = 0; i < tasks.size(); ++i)
                        if (tasks[i].M == M)
                            sum += traces[i * nmu + k][t];
                    out.push_back({M, cc.mu_list[k], t, sum / cfg.trials});
                }
        return out;
    }

    std::string format_number(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v); // no "-0"
        return buf;
    }

    std::string sweep_csv(const std::vector<SweepRow> &rows)
    {
        std::ostringstream os;
        os << "scheme,M,snr_db,trial,rate_bits,aux,seed_used\n";
        for (const SweepRow &r : rows)
            os << scheme_name(r.scheme) << ',' << r.M << ',' << format_number(r.snr_db) << ',' << r.trial << ','
               << format_number(r.rate_bits) << ',' << format_number(r.aux) << ',' << r.seed_used << '\n';
        return os.str();
    }

    std::string plotdata_csv(const std::vector<PlotPoint> &pts)
    {
        std::ostringstream os;
        os << "scheme,M,snr_db,mean_rate,stderr\n";
        for (const PlotPoint &p : pts)
            os << scheme_name(p.scheme) << ',' << p.M << ',' << format_number(p.snr_db) << ','
               << format_number(p.mean_rate) << ',' << format_number(p.stderr_rate) << '\n';
        return os.str();
    }

    std::string convergence_csv(const std::vector<ConvergenceRow> &rows)
    {
        std::ostringstream os;
        os << "M,mu,t,mean_best_rate\n";
        for (const ConvergenceRow &r : rows)
            os << r.M << ',' << format_number(r.mu) << ',' << r.t << ',' << format_number(r.mean_best_rate) << '\n';
        return os.str();
    }

    std::string pso_trace_csv(const SweepConfig &cfg)
    {
        cfg.validate();
        const Scenario &sc = cfg.scenario;
        const double snr = sc.snr_db();
        Rng ch_rng(channel_seed(cfg.seed, sc.M, snr, 0));
        const ChannelRealization real = sample_realization(sc, ch_rng);
        PsoParams p = cfg.pso;
        p.seed = scheme_seed(cfg.seed, Scheme::Pso, sc.M, snr, 0);
        const PsoResult r = run_pso(real, sc.budget(), p);
        std::ostringstream os;
        os << "t,best_fitness,best_rate\n";
        for (std::size_t t = 0; t < r.trace_fitness.size(); ++t)
            os << t << ',' << format_number(r.trace_fitness[t]) << ',' << format_number(r.trace_rate[t]) << '\n';
        return os.str();
    }

    std::string sdp_bound_csv(const SweepConfig &cfg, int threads)
    {
        cfg.validate();
        const Scenario &sc = cfg.scenario;
        const double snr = sc.snr_db();
        std::vector<SdpResult> res(cfg.trials);
        parallel_for(res.size(), threads, [&](std::size_t i) {
            const int tr = static_cast<int>(i);
            Rng ch_rng(channel_seed(cfg.seed, sc.M, snr, tr));
            const ChannelRealization real = sample_realization(sc, ch_rng);
            Rng rng(scheme_seed(cfg.seed, Scheme::SdpUpper, sc.M, snr, tr));
            res[i] = solve_sdp(real, sc.budget(), cfg.sdp, rng);
        });
        std::ostringstream os;
        os << "trial,upper_bound_rate,relaxed_rate,feasible_rate,rank_gap,iterations,converged,certified\n";
        for (std::size_t i = 0; i < res.size(); ++i)
        {
            const SdpResult &r = res[i];
            os << i << ',' << format_number(r.upper_bound_rate) << ',' << format_number(r.relaxed_rate) << ','
               << format_number(r.feasible_rate) << ',' << format_number(r.rank_gap) << ',' << r.iterations << ','
               << (r.converged ? 1 : 0) << ',' << (r.certified ? 1 : 0) << '\n';
        }
        return os.str();
    }

    std::string oracle_csv(const SweepConfig &cfg)
    {
        cfg.validate();
        const Scenario &sc = cfg.scenario;
        Rng ch_rng(channel_seed(cfg.seed, sc.M, sc.snr_db(), 0));
        const ChannelRealization real = sample_realization(sc, ch_rng);
        const OracleResult r = brute_force_search(real, sc.budget(), cfg.oracle);
        std::ostringstream os;
        os << "rate_best";
        for (int m = 0; m < r.theta.size(); ++m)
            os << ",theta_" << m + 1;
        os << '\n' << format_number(r.rate);
        for (int m = 0; m < r.theta.size(); ++m)
            os << ',' << format_number(r.theta[m]);
        os << '\n';
        return os.str();
    }
}
