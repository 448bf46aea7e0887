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

#include "srris/sinr.hpp"
#include "srris/errors.hpp"

#include <cmath>
#include <numbers>

namespace srris
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        CVector lifted_vector(const CVector &a, const CVector &b, cplx tail)
        {
            CVector q(a.size() + 1);
            q.head(a.size()) = a.cwiseProduct(b);
            q[a.size()] = tail;
            return q;
        }

        void check_dims(const ChannelRealization &real, int n)
        {
            require(real.num_phases() == n, "phase vector length " + std::to_string(n) +
                                                " does not match 2M = " + std::to_string(real.num_phases()));
        }

        // v^T diag(refl) w without forming the diagonal matrix.
        cplx cascade(const CVector &v, const CVector &refl, const CVector &w)
        {
            cplx acc{};
            for (Eigen::Index m = 0; m < refl.size(); ++m)
                acc += v[m] * refl[m] * w[m];
            return acc;
        }
    }

    double wrap_phase(double a)
    {
        if (a >= -pi && a <= pi)
            return a;
        double r = std::remainder(a, 2.0 * pi);
        if (r < -pi)
            r += 2.0 * pi;
        else if (r > pi)
            r -= 2.0 * pi;
        return r;
    }

    PhaseVector::PhaseVector(RVector phases) : phases_(std::move(phases))
    {
        for (Eigen::Index i = 0; i < phases_.size(); ++i)
            if (!(phases_[i] >= -pi && phases_[i] <= pi))
                throw ContractViolation("PhaseVector: entry " + std::to_string(i) + " = " +
                                        std::to_string(phases_[i]) + " outside [-pi, pi]");
    }

    PhaseVector PhaseVector::wrapped(const RVector &angles)
    {
        return PhaseVector(angles.unaryExpr([](double a) { return wrap_phase(a); }));
    }

    CVector PhaseVector::reflection() const
    {
        CVector r(phases_.size());
        for (Eigen::Index i = 0; i < phases_.size(); ++i)
            r[i] = std::polar(1.0, phases_[i]);
        return r;
    }

    QuadraticForms build_quadratics(const ChannelRealization &real)
    {
        QuadraticForms qf;
        qf.q_sr1 = lifted_vector(real.h_ir1, real.h_si, real.h_sr1);
        qf.q_r2r1 = lifted_vector(real.h_ir1, real.h_r2i, real.h_r2r1);
        qf.q_r2d = lifted_vector(real.h_id, real.h_r2i, real.h_r2d);
        qf.q_sd = lifted_vector(real.h_id, real.h_si, cplx{0.0, 0.0});
        qf.Q_sr1 = qf.q_sr1 * qf.q_sr1.adjoint();
        qf.Q_r2r1 = qf.q_r2r1 * qf.q_r2r1.adjoint();
        qf.Q_r2d = qf.q_r2d * qf.q_r2d.adjoint();
        qf.Q_sd = qf.q_sd * qf.q_sd.adjoint();
        return qf;
    }

    SinrPair sinr_both(const ChannelRealization &real, const CVector &refl, const LinkBudget &b)
    {
        const cplx desired_r1 = real.h_sr1 + cascade(real.h_ir1, refl, real.h_si);
        const cplx iri = real.h_r2r1 + cascade(real.h_ir1, refl, real.h_r2i);
        const cplx desired_d = real.h_r2d + cascade(real.h_id, refl, real.h_r2i);
        const cplx leak_sd = cascade(real.h_id, refl, real.h_si);
        return {b.p_s * std::norm(desired_r1) / (b.p_r2 * std::norm(iri) + b.sigma2),
                b.p_r2 * std::norm(desired_d) / (b.p_s * std::norm(leak_sd) + b.sigma2)};
    }

    SinrPair sinr_both(const ChannelRealization &real, const PhaseVector &theta, const LinkBudget &b)
    {
        check_dims(real, theta.size());
        return sinr_both(real, theta.reflection(), b);
    }

    double sinr_r1(const ChannelRealization &real, const PhaseVector &theta, const LinkBudget &b)
    {
        return sinr_both(real, theta, b).r1;
    }

    double sinr_d(const ChannelRealization &real, const PhaseVector &theta, const LinkBudget &b)
    {
        return sinr_both(real, theta, b).d;
    }

    double trace_quadratic(const CMatrix &V, const CVector &q)
    {
        const cplx t = q.dot(V * q); // q^H V q
        const double scale = V.cwiseAbs().maxCoeff() * q.squaredNorm();
        if (std::abs(t.imag()) > 1e-9 * std::max(scale, std::abs(t.real())) && scale > 0.0)
            throw ContractViolation("trace form has a non-negligible imaginary residue");
        return t.real();
    }

    double sinr_trace_form(const QuadraticForms &qf, const CMatrix &V, Receiver which, const LinkBudget &b)
    {
        require(V.rows() == qf.dim() && V.cols() == qf.dim(), "sinr_trace_form: V has the wrong size");
        const double herm_err = (V - V.adjoint()).cwiseAbs().maxCoeff();
        require(herm_err <= 1e-9 * std::max(1.0, V.cwiseAbs().maxCoeff()), "sinr_trace_form: V is not Hermitian");

        if (which == Receiver::R1)
            return b.p_s * trace_quadratic(V, qf.q_sr1) / (b.p_r2 * trace_quadratic(V, qf.q_r2r1) + b.sigma2);
        return b.p_r2 * trace_quadratic(V, qf.q_r2d) / (b.p_s * trace_quadratic(V, qf.q_sd) + b.sigma2);
    }

    CMatrix lift(const PhaseVector &theta)
    {
        CVector v(theta.size() + 1);
        v.head(theta.size()) = theta.reflection();
        v[theta.size()] = 1.0;
        return v.conjugate() * v.transpose();
    }

    double effective_rate(double gamma_r1, double gamma_d)
    {
        require(gamma_r1 >= 0.0 && gamma_d >= 0.0, "effective_rate: SINR arguments must be >= 0");
        return std::min(std::log2(1.0 + gamma_r1), std::log2(1.0 + gamma_d));
    }
}
