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

#ifndef SRRIS_SINR_HPP
#define SRRIS_SINR_HPP

#include <span>

#include "srris/channel.hpp"

namespace srris
{
    // 2M surface phases in radians, each in [-pi, pi]. The first M belong to I1, the rest to I2.
    class PhaseVector
    {
    public:
        PhaseVector() = default;

        // Throws ContractViolation if any entry is outside [-pi, pi] or non-finite.
        explicit PhaseVector(RVector phases);

        // Maps arbitrary angles into [-pi, pi].
        static PhaseVector wrapped(const RVector &angles);
        static PhaseVector zeros(int n) { return PhaseVector(RVector::Zero(n)); }

        const RVector &values() const { return phases_; }
        int size() const { return static_cast<int>(phases_.size()); }
        double operator[](int i) const { return phases_[i]; }

        // diag(Theta) = exp(j * theta).
        CVector reflection() const;

    private:
        RVector phases_;
    };

    // Wraps one angle into [-pi, pi].
    double wrap_phase(double a);

    /*!
     * Lifted quadratic forms of both SINRs.
     *
     * With v = [exp(j theta); 1] and V = conj(v) v^T every trace term tr(V Q_x) equals
     * |v^T q_x|^2, the squared magnitude of the corresponding composite channel.
     */
    struct QuadraticForms
    {
        CVector q_sr1, q_r2r1, q_r2d, q_sd;
        CMatrix Q_sr1, Q_r2r1, Q_r2d, Q_sd;

        int dim() const { return static_cast<int>(q_sr1.size()); }
    };

    QuadraticForms build_quadratics(const ChannelRealization &real);

    enum class Receiver
    {
        R1,
        D
    };

    struct SinrPair
    {
        double r1 = 0.0;
        double d = 0.0;
        double min() const { return r1 < d ? r1 : d; }
    };

    // Direct evaluation; Theta is applied elementwise and never materialized.
    double sinr_r1(const ChannelRealization &real, const PhaseVector &theta, const LinkBudget &b);
    double sinr_d(const ChannelRealization &real, const PhaseVector &theta, const LinkBudget &b);
    SinrPair sinr_both(const ChannelRealization &real, const PhaseVector &theta, const LinkBudget &b);

    // Same as above on precomputed reflection coefficients exp(j theta); used on hot paths.
    SinrPair sinr_both(const ChannelRealization &real, const CVector &reflection, const LinkBudget &b);

    // Trace form on a lifted matrix V. V must be Hermitian (ContractViolation otherwise);
    // the imaginary residue of every trace is checked against 1e-9 relative.
    double sinr_trace_form(const QuadraticForms &qf, const CMatrix &V, Receiver which, const LinkBudget &b);

    // tr(V q q^H) = q^H V q for Hermitian V, real part.
    double trace_quadratic(const CMatrix &V, const CVector &q);

    // V = conj(v) v^T with v = [exp(j theta); 1].
    CMatrix lift(const PhaseVector &theta);

    // min{log2(1 + gamma_r1), log2(1 + gamma_d)}; negative input is a ContractViolation.
    double effective_rate(double gamma_r1, double gamma_d);

    inline double effective_rate(const SinrPair &s) { return effective_rate(s.r1, s.d); }
}

#endif
