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

#ifndef SRRIS_ORACLE_HPP
#define SRRIS_ORACLE_HPP

#include "srris/sinr.hpp"

namespace srris
{
    struct OracleConfig
    {
        int levels = 64;      // grid points per phase: -pi + 2 pi k / levels, k = 0..levels-1
        int max_elements = 4; // largest 2M accepted

        void validate(const std::string &path = "oracle") const;
    };

    // Hard cap on the number of grid points visited by exhaustive search.
    inline constexpr double kOracleGridLimit = 1e8;

    struct OracleResult
    {
        PhaseVector theta;
        double rate = 0.0;
        long long evaluated = 0;
    };

    // Exact maximum of the effective rate over the uniform phase grid. Throws GuardError when
    // 2M > max_elements or levels^(2M) > 1e8.
    OracleResult brute_force_search(const ChannelRealization &real, const LinkBudget &b, const OracleConfig &cfg);

    // Two relays, no surfaces: min of the hop rates with IRI at R1 and a clean hop at D.
    double rate_sr_no_ris(const ChannelRealization &real, const LinkBudget &b);

    // Both surfaces coherently aligned from S to D, full-time single hop with power p.
    double rate_ris_only(const ChannelRealization &real, double p, double sigma2);

    // The aligning phases theta_m = -(arg h_id[m] + arg h_si[m]), wrapped.
    PhaseVector ris_only_phases(const ChannelRealization &real);
}

#endif
