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

#ifndef SRRIS_EXPERIMENT_HPP
#define SRRIS_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "srris/oracle.hpp"
#include "srris/pso.hpp"
#include "srris/sdp.hpp"

namespace srris
{
    enum class Scheme
    {
        SdpUpper,
        Pso,
        SrNoRis,
        RisOnly,
        Oracle
    };

    std::string scheme_name(Scheme s);
    Scheme parse_scheme(const std::string &name, const std::string &path);

    struct ConvergenceConfig
    {
        double snr_db = 50.0;
        int N = 50;
        std::vector<int> m_list{16, 32};
        std::vector<double> mu_list; // defaults to pi/8, pi/4, pi/2, pi
    };

    struct SweepConfig
    {
        Scenario scenario;
        std::vector<double> snr_grid_db;
        std::vector<int> m_list{16, 32};
        int trials = 200;
        std::vector<Scheme> schemes{Scheme::SdpUpper, Scheme::Pso, Scheme::SrNoRis, Scheme::RisOnly};
        PsoParams pso;
        SdpOptions sdp;
        OracleConfig oracle;
        ConvergenceConfig convergence;
        std::uint64_t seed = 1;

        SweepConfig();
        void validate() const; // ConfigError with the field path
    };

    SweepConfig sweep_config_from_json(const nlohmann::json &j);
    nlohmann::json sweep_config_to_json(const SweepConfig &cfg);

    struct SweepRow
    {
        Scheme scheme = Scheme::Pso;
        int M = 0;
        double snr_db = 0.0;
        int trial = 0;
        double rate_bits = 0.0;
        double aux = 0.0; // sdp_upper: rank gap, pso: best min-SINR, oracle: grid points visited
        std::uint64_t seed_used = 0;
    };

    // Seeds. The channel stream depends on (M, snr, trial) only, so every RIS-assisted scheme sees
    // the same realization; each scheme draws its own randomness from (scheme, M, snr, trial).
    std::uint64_t channel_seed(std::uint64_t master, int M, double snr_db, int trial);
    std::uint64_t scheme_seed(std::uint64_t master, Scheme s, int M, double snr_db, int trial);

    // Rows ordered by (M, snr, trial, scheme in config order) regardless of thread count.
    // When given, invariants receives the PSO bound-check counters summed over all runs.
    std::vector<SweepRow> run_sweep(const SweepConfig &cfg, int threads = 1, PsoInvariantCounts *invariants = nullptr);

    struct PlotPoint
    {
        Scheme scheme = Scheme::Pso;
        int M = 0;
        double snr_db = 0.0;
        double mean_rate = 0.0;
        double stderr_rate = 0.0;
        int count = 0;
    };

    // Mean and standard error per (scheme, M, snr). Throws AggregationError naming the first
    // missing (scheme, M, snr, trial) tuple of cfg.
    std::vector<PlotPoint> emit_plotdata(const std::vector<SweepRow> &rows, const SweepConfig &cfg);

    struct ConvergenceRow
    {
        int M = 0;
        double mu = 0.0;
        int t = 0;
        double mean_best_rate = 0.0;
    };

    // Best-so-far PSO trace averaged over cfg.trials realizations at cfg.convergence.snr_db.
    // The realization and the initial swarm of a trial are shared by every mu.
    std::vector<ConvergenceRow> run_convergence(const SweepConfig &cfg, int threads = 1,
                                                PsoInvariantCounts *invariants = nullptr);

    // CSV writers: header row, numbers with 6 significant digits.
    std::string format_number(double v);
    std::string sweep_csv(const std::vector<SweepRow> &rows);
    std::string plotdata_csv(const std::vector<PlotPoint> &pts);
    std::string convergence_csv(const std::vector<ConvergenceRow> &rows);

    // Single-instance outputs used by the CLI subcommands.
    std::string pso_trace_csv(const SweepConfig &cfg);
    std::string sdp_bound_csv(const SweepConfig &cfg, int threads = 1);
    std::string oracle_csv(const SweepConfig &cfg);
}

#endif
