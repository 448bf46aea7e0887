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

#include "srris/oracle.hpp"
#include "srris/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace srris
{
    void OracleConfig::validate(const std::string &path) const
    {
        if (levels < 2)
            throw ConfigError(path + ".levels: must be >= 2, got " + std::to_string(levels));
        if (max_elements < 1)
            throw ConfigError(path + ".max_elements: must be >= 1, got " + std::to_string(max_elements));
    }

    OracleResult brute_force_search(const ChannelRealization &real, const LinkBudget &b, const OracleConfig &cfg)
    {
        cfg.validate();
        const int n = real.num_phases();
        if (n > cfg.max_elements)
            throw GuardError("brute_force_search: 2M = " + std::to_string(n) + " exceeds max_elements = " +
                             std::to_string(cfg.max_elements));
        if (n * std::log10(static_cast<double>(cfg.levels)) > std::log10(kOracleGridLimit) + 1e-12)
            throw GuardError("brute_force_search: levels^(2M) = " + std::to_string(cfg.levels) + "^" +
                             std::to_string(n) + " exceeds 1e8 grid points");

        std::vector<cplx> grid(cfg.levels);
        std::vector<double> angle(cfg.levels);
        for (int k = 0; k < cfg.levels; ++k)
        {
            angle[k] = -std::numbers::pi + 2.0 * std::numbers::pi * k / cfg.levels;
            grid[k] = std::polar(1.0, angle[k]);
        }

        std::vector<int> idx(n, 0), best_idx(n, 0);
        CVector refl(n);
        for (int m = 0; m < n; ++m)
            refl[m] = grid[0];
        double best = -1.0;
        long long count = 0;
        while (true)
        {
            const double f = sinr_both(real, refl, b).min();
            ++count;
            if (f > best)
            {
                best = f;
                best_idx = idx;
            }
            int m = 0;
            while (m < n && ++idx[m] == cfg.levels)
            {
                idx[m] = 0;
                refl[m] = grid[0];
                ++m;
            }
            if (m == n)
                break;
            refl[m] = grid[idx[m]];
        }

        RVector th(n);
        for (int m = 0; m < n; ++m)
            th[m] = angle[best_idx[m]];
        OracleResult out;
        out.theta = PhaseVector(th);
        out.rate = std::log2(1.0 + best);
        out.evaluated = count;
        return out;
    }

    double rate_sr_no_ris(const ChannelRealization &real, const LinkBudget &b)
    {
        const double g_r1 = b.p_s * std::norm(real.h_sr1) / (b.p_r2 * std::norm(real.h_r2r1) + b.sigma2);
        const double g_d = b.p_r2 * std::norm(real.h_r2d) / b.sigma2;
        return effective_rate(g_r1, g_d);
    }

    double rate_ris_only(const ChannelRealization &real, double p, double sigma2)
    {
        require(p >= 0.0 && sigma2 > 0.0, "rate_ris_only: need p >= 0 and sigma2 > 0");
        const double amp = real.h_id.cwiseAbs().dot(real.h_si.cwiseAbs());
        return std::log2(1.0 + p * amp * amp / sigma2);
    }

    PhaseVector ris_only_phases(const ChannelRealization &real)
    {
        RVector th(real.num_phases());
        for (int m = 0; m < th.size(); ++m)
            th[m] = -(std::arg(real.h_id[m]) + std::arg(real.h_si[m]));
        return PhaseVector::wrapped(th);
    }
}
