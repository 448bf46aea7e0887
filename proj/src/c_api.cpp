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

#include "srris/srris.h"
#include "srris/experiment.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct srris_scenario
{
    srris::Scenario sc;
};

struct srris_realization
{
    srris::ChannelRealization real;
};

struct srris_config
{
    srris::SweepConfig cfg;
};

namespace
{
    thread_local std::string last_error;

    srris_status fail(srris_status s, const char *what)
    {
        last_error = what;
        return s;
    }

    // Runs body and maps library exceptions onto status codes.
    template <typename F>
    srris_status guarded(F &&body)
    {
        try
        {
            body();
            last_error.clear();
            return SRRIS_OK;
        }
        catch (const srris::ConfigError &e)
        {
            return fail(SRRIS_ERR_CONFIG, e.what());
        }
        catch (const nlohmann::json::exception &e)
        {
            return fail(SRRIS_ERR_CONFIG, e.what());
        }
        catch (const srris::DomainError &e)
        {
            return fail(SRRIS_ERR_DOMAIN, e.what());
        }
        catch (const srris::ContractViolation &e)
        {
            return fail(SRRIS_ERR_CONTRACT, e.what());
        }
        catch (const srris::SolverError &e)
        {
            return fail(SRRIS_ERR_SOLVER, e.what());
        }
        catch (const srris::GuardError &e)
        {
            return fail(SRRIS_ERR_GUARD, e.what());
        }
        catch (const srris::AggregationError &e)
        {
            return fail(SRRIS_ERR_AGGREGATION, e.what());
        }
        catch (const std::bad_alloc &)
        {
            return fail(SRRIS_ERR_INTERNAL, "out of memory");
        }
        catch (const std::exception &e)
        {
            return fail(SRRIS_ERR_INTERNAL, e.what());
        }
        catch (...)
        {
            return fail(SRRIS_ERR_INTERNAL, "unknown exception");
        }
    }

    template <typename... P>
    bool any_null(P... p)
    {
        return ((p == nullptr) || ...);
    }

    char *dup(const std::string &s)
    {
        char *out = static_cast<char *>(std::malloc(s.size() + 1));
        if (!out)
            throw std::bad_alloc();
        std::memcpy(out, s.c_str(), s.size() + 1);
        return out;
    }

    srris::PhaseVector phases(const double *theta, std::size_t n)
    {
        srris::RVector v(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i)
            v[static_cast<Eigen::Index>(i)] = theta[i];
        return srris::PhaseVector(v);
    }

    void copy_theta(const srris::PhaseVector &th, double *out, std::size_t n)
    {
        if (!out)
            return;
        srris::require(n == static_cast<std::size_t>(th.size()), "theta_out length must equal 2M");
        for (int i = 0; i < th.size(); ++i)
            out[i] = th[i];
    }

    const srris::SweepConfig &config_or_default(const srris_config *cfg)
    {
        static const srris::SweepConfig defaults;
        return cfg ? cfg->cfg : defaults;
    }
}

#define SRRIS_REQUIRE_ARGS(...)                                                                                        \
    if (any_null(__VA_ARGS__))                                                                                         \
    return fail(SRRIS_ERR_ARGUMENT, "null argument")

extern "C" {

const char *srris_version(void) { return "1.0.0"; }

const char *srris_status_name(srris_status s)
{
    switch (s)
    {
    case SRRIS_OK:
        return "ok";
    case SRRIS_ERR_CONFIG:
        return "config_error";
    case SRRIS_ERR_DOMAIN:
        return "domain_error";
    case SRRIS_ERR_CONTRACT:
        return "contract_violation";
    case SRRIS_ERR_SOLVER:
        return "solver_error";
    case SRRIS_ERR_GUARD:
        return "guard_error";
    case SRRIS_ERR_AGGREGATION:
        return "aggregation_error";
    case SRRIS_ERR_ARGUMENT:
        return "invalid_argument";
    case SRRIS_ERR_INTERNAL:
        return "internal_error";
    }
    return "unknown";
}

const char *srris_last_error(void) { return last_error.c_str(); }

void srris_string_free(char *s) { std::free(s); }

srris_status srris_scenario_create(srris_scenario **out)
{
    SRRIS_REQUIRE_ARGS(out);
    return guarded([&] { *out = new srris_scenario{}; });
}

srris_status srris_scenario_from_json(const char *json, srris_scenario **out)
{
    SRRIS_REQUIRE_ARGS(json, out);
    return guarded([&] { *out = new srris_scenario{srris::scenario_from_json(nlohmann::json::parse(json))}; });
}

srris_status srris_scenario_to_json(const srris_scenario *sc, char **json_out)
{
    SRRIS_REQUIRE_ARGS(sc, json_out);
    return guarded([&] { *json_out = dup(srris::scenario_to_json(sc->sc).dump()); });
}

srris_status srris_scenario_set_elements(srris_scenario *sc, int M)
{
    SRRIS_REQUIRE_ARGS(sc);
    return guarded([&] {
        srris::Scenario next = sc->sc;
        next.M = M;
        next.validate();
        sc->sc = next;
    });
}

srris_status srris_scenario_set_snr_db(srris_scenario *sc, double snr_db)
{
    SRRIS_REQUIRE_ARGS(sc);
    return guarded([&] {
        srris::Scenario next = sc->sc;
        next.set_snr_db(snr_db);
        next.validate();
        sc->sc = next;
    });
}

srris_status srris_scenario_set_iri_rayleigh(srris_scenario *sc, int rayleigh)
{
    SRRIS_REQUIRE_ARGS(sc);
    sc->sc.iri_fading = rayleigh ? srris::Fading::Rayleigh : srris::Fading::Rician;
    last_error.clear();
    return SRRIS_OK;
}

void srris_scenario_free(srris_scenario *sc) { delete sc; }

srris_status srris_realization_sample(const srris_scenario *sc, uint64_t seed, srris_realization **out)
{
    SRRIS_REQUIRE_ARGS(sc, out);
    return guarded([&] {
        srris::Rng rng(seed);
        *out = new srris_realization{srris::sample_realization(sc->sc, rng)};
    });
}

srris_status srris_realization_num_phases(const srris_realization *r, int *out)
{
    SRRIS_REQUIRE_ARGS(r, out);
    *out = r->real.num_phases();
    last_error.clear();
    return SRRIS_OK;
}

void srris_realization_free(srris_realization *r) { delete r; }

srris_status srris_sinr(const srris_scenario *sc, const srris_realization *r, const double *theta, size_t n,
                        double *gamma_r1, double *gamma_d)
{
    SRRIS_REQUIRE_ARGS(sc, r, theta, gamma_r1, gamma_d);
    return guarded([&] {
        const srris::SinrPair g = srris::sinr_both(r->real, phases(theta, n), sc->sc.budget());
        *gamma_r1 = g.r1;
        *gamma_d = g.d;
    });
}

srris_status srris_effective_rate(const srris_scenario *sc, const srris_realization *r, const double *theta,
                                  size_t n, double *rate)
{
    SRRIS_REQUIRE_ARGS(sc, r, theta, rate);
    return guarded(
        [&] { *rate = srris::effective_rate(srris::sinr_both(r->real, phases(theta, n), sc->sc.budget())); });
}

srris_status srris_rate_sr_no_ris(const srris_scenario *sc, const srris_realization *r, double *rate)
{
    SRRIS_REQUIRE_ARGS(sc, r, rate);
    return guarded([&] { *rate = srris::rate_sr_no_ris(r->real, sc->sc.budget()); });
}

srris_status srris_rate_ris_only(const srris_scenario *sc, const srris_realization *r, double *rate)
{
    SRRIS_REQUIRE_ARGS(sc, r, rate);
    return guarded([&] { *rate = srris::rate_ris_only(r->real, sc->sc.p, sc->sc.sigma2); });
}

srris_status srris_pso(const srris_config *cfg, const srris_scenario *sc, const srris_realization *r, uint64_t seed,
                       double *rate, double *theta_out, size_t n)
{
    SRRIS_REQUIRE_ARGS(sc, r, rate);
    return guarded([&] {
        srris::PsoParams p = config_or_default(cfg).pso;
        p.seed = seed;
        const srris::PsoResult res = srris::run_pso(r->real, sc->sc.budget(), p);
        copy_theta(res.theta, theta_out, n);
        *rate = res.rate;
    });
}

srris_status srris_sdp(const srris_config *cfg, const srris_scenario *sc, const srris_realization *r, uint64_t seed,
                       double *upper_bound_rate, double *feasible_rate, double *theta_out, size_t n)
{
    SRRIS_REQUIRE_ARGS(sc, r, upper_bound_rate, feasible_rate);
    return guarded([&] {
        srris::Rng rng(seed);
        const srris::SdpResult res = srris::solve_sdp(r->real, sc->sc.budget(), config_or_default(cfg).sdp, rng);
        copy_theta(res.theta_feasible, theta_out, n);
        *upper_bound_rate = res.upper_bound_rate;
        *feasible_rate = res.feasible_rate;
    });
}

srris_status srris_oracle(const srris_config *cfg, const srris_scenario *sc, const srris_realization *r, double *rate,
                          double *theta_out, size_t n)
{
    SRRIS_REQUIRE_ARGS(sc, r, rate);
    return guarded([&] {
        const srris::OracleResult res = srris::brute_force_search(r->real, sc->sc.budget(), config_or_default(cfg).oracle);
        copy_theta(res.theta, theta_out, n);
        *rate = res.rate;
    });
}

srris_status srris_config_create(srris_config **out)
{
    SRRIS_REQUIRE_ARGS(out);
    return guarded([&] { *out = new srris_config{}; });
}

srris_status srris_config_from_json(const char *json, srris_config **out)
{
    SRRIS_REQUIRE_ARGS(json, out);
    return guarded([&] { *out = new srris_config{srris::sweep_config_from_json(nlohmann::json::parse(json))}; });
}

srris_status srris_config_to_json(const srris_config *cfg, char **json_out)
{
    SRRIS_REQUIRE_ARGS(cfg, json_out);
    return guarded([&] { *json_out = dup(srris::sweep_config_to_json(cfg->cfg).dump(2)); });
}

srris_status srris_config_set_seed(srris_config *cfg, uint64_t seed)
{
    SRRIS_REQUIRE_ARGS(cfg);
    cfg->cfg.seed = seed;
    last_error.clear();
    return SRRIS_OK;
}

void srris_config_free(srris_config *cfg) { delete cfg; }

srris_status srris_run_sweep(const srris_config *cfg, int threads, char **csv_out, char **summary_out)
{
    SRRIS_REQUIRE_ARGS(cfg, csv_out);
    return guarded([&] {
        const auto rows = srris::run_sweep(cfg->cfg, threads);
        std::string summary;
        if (summary_out)
            summary = srris::plotdata_csv(srris::emit_plotdata(rows, cfg->cfg));
        char *csv = dup(srris::sweep_csv(rows));
        if (summary_out)
        {
            try
            {
                *summary_out = dup(summary);
            }
            catch (...)
            {
                std::free(csv);
                throw;
            }
        }
        *csv_out = csv;
    });
}

srris_status srris_run_pso_trace(const srris_config *cfg, char **csv_out)
{
    SRRIS_REQUIRE_ARGS(cfg, csv_out);
    return guarded([&] { *csv_out = dup(srris::pso_trace_csv(cfg->cfg)); });
}

srris_status srris_run_sdp_bound(const srris_config *cfg, int threads, char **csv_out)
{
    SRRIS_REQUIRE_ARGS(cfg, csv_out);
    return guarded([&] { *csv_out = dup(srris::sdp_bound_csv(cfg->cfg, threads)); });
}

srris_status srris_run_oracle(const srris_config *cfg, char **csv_out)
{
    SRRIS_REQUIRE_ARGS(cfg, csv_out);
    return guarded([&] { *csv_out = dup(srris::oracle_csv(cfg->cfg)); });
}

srris_status srris_run_convergence(const srris_config *cfg, int threads, char **csv_out)
{
    SRRIS_REQUIRE_ARGS(cfg, csv_out);
    return guarded([&] { *csv_out = dup(srris::convergence_csv(srris::run_convergence(cfg->cfg, threads))); });
}

} // extern "C"
