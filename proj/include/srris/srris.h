/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * srris: successive relaying with reconfigurable intelligent surfaces
 * Copyright (C) 2026 The srris authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SRRIS_H
#define SRRIS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SRRIS_API __declspec(dllexport)
#else
#define SRRIS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum srris_status
{
    SRRIS_OK = 0,
    SRRIS_ERR_CONFIG = 1,      /* invalid configuration; message carries the field path */
    SRRIS_ERR_DOMAIN = 2,      /* argument outside the domain of an operation */
    SRRIS_ERR_CONTRACT = 3,    /* broken precondition (sizes, ranges) */
    SRRIS_ERR_SOLVER = 4,      /* the relaxation solver failed */
    SRRIS_ERR_GUARD = 5,       /* exhaustive search refused: instance too large */
    SRRIS_ERR_AGGREGATION = 6, /* incomplete row set */
    SRRIS_ERR_ARGUMENT = 7,    /* null handle or output pointer */
    SRRIS_ERR_INTERNAL = 8
} srris_status;

typedef struct srris_scenario srris_scenario;
typedef struct srris_realization srris_realization;
typedef struct srris_config srris_config;

SRRIS_API const char *srris_version(void);
SRRIS_API const char *srris_status_name(srris_status s);

/* Message of the last failure on the calling thread; empty after a success. Owned by the library. */
SRRIS_API const char *srris_last_error(void);

/* Frees strings returned through char ** out-parameters. */
SRRIS_API void srris_string_free(char *s);

/* Scenario: geometry, powers and fading parameters. */
SRRIS_API srris_status srris_scenario_create(srris_scenario **out);
SRRIS_API srris_status srris_scenario_from_json(const char *json, srris_scenario **out);
SRRIS_API srris_status srris_scenario_to_json(const srris_scenario *sc, char **json_out);
SRRIS_API srris_status srris_scenario_set_elements(srris_scenario *sc, int M);
SRRIS_API srris_status srris_scenario_set_snr_db(srris_scenario *sc, double snr_db);
SRRIS_API srris_status srris_scenario_set_iri_rayleigh(srris_scenario *sc, int rayleigh);
SRRIS_API void srris_scenario_free(srris_scenario *sc);

/* One channel draw; a pure function of (scenario, seed). */
SRRIS_API srris_status srris_realization_sample(const srris_scenario *sc, uint64_t seed, srris_realization **out);
SRRIS_API srris_status srris_realization_num_phases(const srris_realization *r, int *out);
SRRIS_API void srris_realization_free(srris_realization *r);

/* theta holds 2M phases in [-pi, pi]. */
SRRIS_API srris_status srris_sinr(const srris_scenario *sc, const srris_realization *r, const double *theta,
                                  size_t n, double *gamma_r1, double *gamma_d);
SRRIS_API srris_status srris_effective_rate(const srris_scenario *sc, const srris_realization *r,
                                            const double *theta, size_t n, double *rate);

/* Baselines. sr_no_ris reads only the direct links of r; ris_only aligns both surfaces S -> D. */
SRRIS_API srris_status srris_rate_sr_no_ris(const srris_scenario *sc, const srris_realization *r, double *rate);
SRRIS_API srris_status srris_rate_ris_only(const srris_scenario *sc, const srris_realization *r, double *rate);

/* Optimizers on one realization. cfg may be NULL for defaults; theta_out (length n = 2M) may be NULL. */
SRRIS_API srris_status srris_pso(const srris_config *cfg, const srris_scenario *sc, const srris_realization *r,
                                 uint64_t seed, double *rate, double *theta_out, size_t n);
SRRIS_API srris_status srris_sdp(const srris_config *cfg, const srris_scenario *sc, const srris_realization *r,
                                 uint64_t seed, double *upper_bound_rate, double *feasible_rate, double *theta_out,
                                 size_t n);
SRRIS_API srris_status srris_oracle(const srris_config *cfg, const srris_scenario *sc, const srris_realization *r,
                                    double *rate, double *theta_out, size_t n);

/* Experiment configuration (JSON). */
SRRIS_API srris_status srris_config_create(srris_config **out);
SRRIS_API srris_status srris_config_from_json(const char *json, srris_config **out);
SRRIS_API srris_status srris_config_to_json(const srris_config *cfg, char **json_out);
SRRIS_API srris_status srris_config_set_seed(srris_config *cfg, uint64_t seed);
SRRIS_API void srris_config_free(srris_config *cfg);

/* Experiment runners; every CSV is returned through csv_out and freed with srris_string_free.
 * summary_out of srris_run_sweep may be NULL. */
SRRIS_API srris_status srris_run_sweep(const srris_config *cfg, int threads, char **csv_out, char **summary_out);
SRRIS_API srris_status srris_run_pso_trace(const srris_config *cfg, char **csv_out);
SRRIS_API srris_status srris_run_sdp_bound(const srris_config *cfg, int threads, char **csv_out);
SRRIS_API srris_status srris_run_oracle(const srris_config *cfg, char **csv_out);
SRRIS_API srris_status srris_run_convergence(const srris_config *cfg, int threads, char **csv_out);

#ifdef __cplusplus
}
#endif

#endif
