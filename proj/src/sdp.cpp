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

#include "srris/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace srris
{
    namespace
    {
        using Vec4 = Eigen::Vector4d;
        using Mat4 = Eigen::Matrix4d;
        using QCols = Eigen::Matrix<cplx, Eigen::Dynamic, 4>;

        // Trace terms y_k = q_k^H V q_k, k = sr1, r2r1, r2d, sd.
        // A_i = a_i . y and B_i = b_i . y are the received and interference powers at R1 (i = 0) and D (i = 1).
        struct TraceModel
        {
            QCols q;
            Eigen::Matrix<double, 2, 4> a;
            Eigen::Matrix<double, 2, 4> b;
            double sigma2 = 1.0;

            TraceModel(const QuadraticForms &qf, const LinkBudget &lb) : q(qf.dim(), 4), sigma2(lb.sigma2)
            {
                q.col(0) = qf.q_sr1;
                q.col(1) = qf.q_r2r1;
                q.col(2) = qf.q_r2d;
                q.col(3) = qf.q_sd;
                a << lb.p_s, lb.p_r2, 0.0, 0.0, 0.0, 0.0, lb.p_r2, lb.p_s;
                b << 0.0, lb.p_r2, 0.0, 0.0, 0.0, 0.0, 0.0, lb.p_s;
                // Work with unit-norm q_k so every y_k is O(1); the norms move into a and b.
                for (int k = 0; k < 4; ++k)
                {
                    const double w = q.col(k).squaredNorm();
                    if (w > 0.0)
                    {
                        q.col(k) /= std::sqrt(w);
                        a.col(k) *= w;
                        b.col(k) *= w;
                    }
                }
            }

            Vec4 traces(const CMatrix &V) const
            {
                Vec4 y;
                for (int k = 0; k < 4; ++k)
                    y[k] = q.col(k).dot(V * q.col(k)).real();
                return y;
            }
        };

        // Linearized objective f_i(y) = ln(A_i + sigma2) - (B_i + sigma2) e^{-u_bar_i} + 1 - u_bar_i.
        struct LinearizedObjective
        {
            const TraceModel &m;
            Pair expneg{};
            Pair offset{};

            LinearizedObjective(const TraceModel &model, const Pair &u_bar) : m(model)
            {
                for (int i = 0; i < 2; ++i)
                {
                    expneg[i] = std::exp(-u_bar[i]);
                    offset[i] = 1.0 - u_bar[i];
                }
            }

            double received(int i, const Vec4 &y) const { return m.a.row(i).dot(y) + m.sigma2; }
            double interference(int i, const Vec4 &y) const { return m.b.row(i).dot(y) + m.sigma2; }

            double value(int i, const Vec4 &y) const
            {
                return std::log(received(i, y)) - interference(i, y) * expneg[i] + offset[i];
            }

            Vec4 gradient(int i, const Vec4 &y) const
            {
                return m.a.row(i).transpose() / received(i, y) - m.b.row(i).transpose() * expneg[i];
            }

            double min_value(const Vec4 &y) const { return std::min(value(0, y), value(1, y)); }
        };

        void hermitize(CMatrix &V)
        {
            V = (0.5 * (V + V.adjoint())).eval();
            for (Eigen::Index i = 0; i < V.rows(); ++i)
                V(i, i) = cplx(V(i, i).real(), 0.0);
        }

        struct NewtonInputs
        {
            const Mat4 &Hyy;
            const Vec4 &Hytau;
            double Htt;
            const Vec4 &gy;
            double gtau;
        };

        // Below this t the reduced system is solved in double; above it in long double.
        constexpr double kExtendedPrecisionFrom = 1e5;

        // Newton direction of the barrier at V = L L^H with the reduced unknowns
        // nu (n), beta (4), delta_y (4), delta_tau (1). Returns the scaled step
        // X = L^-1 dV L^-H = I - L^H diag(nu) L - sum_k beta_k p_k p_k^H, p_k = L^H q_k.
        template <typename Real>
        void newton_direction(const CMatrix &L, const QCols &q, const NewtonInputs &in, CMatrix &X, Vec4 &dy,
                              double &dtau)
        {
            using C = std::complex<Real>;
            using CMat = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;
            using CCols = Eigen::Matrix<C, Eigen::Dynamic, 4>;
            using RMat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
            using RVec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
            using M4 = Eigen::Matrix<Real, 4, 4>;

            const int n = static_cast<int>(L.rows());
            const int N = n + 9;
            const int ib = n, iy = n + 4, it = n + 8;

            const CMat Ll = L.cast<C>();
            const CMat Vl = Ll.template triangularView<Eigen::Lower>() * Ll.adjoint();
            const CCols Pl = Ll.adjoint().template triangularView<Eigen::Upper>() * q.cast<C>();
            const CCols Rl = Ll.template triangularView<Eigen::Lower>() * Pl; // r_k = V q_k
            const RMat Rabs = Rl.cwiseAbs2();
            const M4 Gamma = (Pl.adjoint() * Pl).cwiseAbs2();

            RMat S = RMat::Zero(N, N);
            RVec rhs(N);
            S.topLeftCorner(n, n) = Vl.cwiseAbs2();
            S.block(0, ib, n, 4) = Rabs;
            rhs.head(n) = Real(2) * Vl.diagonal().real().array() - Real(1);

            S.block(iy, 0, 4, n) = Rabs.transpose();
            S.block(iy, ib, 4, 4) = Gamma;
            S.block(iy, iy, 4, 4) = M4::Identity();
            rhs.segment(iy, 4) = Pl.colwise().squaredNorm().transpose();

            S.block(ib, ib, 4, 4) = M4::Identity();
            S.block(ib, iy, 4, 4) = -in.Hyy.cast<Real>();
            S.block(ib, it, 4, 1) = -in.Hytau.cast<Real>();
            rhs.segment(ib, 4) = in.gy.cast<Real>();

            S.block(it, iy, 1, 4) = in.Hytau.transpose().cast<Real>();
            S(it, it) = in.Htt;
            rhs[it] = -in.gtau;

            // Row/column equilibration, then LU with one refinement sweep.
            const RVec row_scale = S.cwiseAbs().rowwise().maxCoeff().cwiseMax(Real(1e-300)).cwiseInverse();
            S = row_scale.asDiagonal() * S;
            const RVec col_scale = S.cwiseAbs().colwise().maxCoeff().transpose().cwiseMax(Real(1e-300)).cwiseInverse();
            S = S * col_scale.asDiagonal();
            const RVec srhs = row_scale.asDiagonal() * rhs;
            const Eigen::PartialPivLU<RMat> lu(S);
            RVec xs = lu.solve(srhs);
            xs += lu.solve(srhs - S * xs);
            const RVec x = col_scale.asDiagonal() * xs;

            const RVec nu = x.head(n);
            CMat Xl = -(Ll.adjoint().template triangularView<Eigen::Upper>() * (nu.asDiagonal() * Ll));
            Xl.diagonal().array() += Real(1);
            for (int k = 0; k < 4; ++k)
                Xl.noalias() -= x[ib + k] * (Pl.col(k) * Pl.col(k).adjoint());
            X = Xl.template cast<cplx>();
            hermitize(X);
            dy = x.segment(iy, 4).template cast<double>();
            dtau = static_cast<double>(x[it]);
        }
    }

    Pair init_linearization(const QuadraticForms &qf, const CMatrix &V_tilde, const LinkBudget &b)
    {
        const double interference_r1 = b.p_r2 * trace_quadratic(V_tilde, qf.q_r2r1) + b.sigma2;
        const double interference_d = b.p_s * trace_quadratic(V_tilde, qf.q_sd) + b.sigma2;
        require(interference_r1 > 0.0 && interference_d > 0.0, "init_linearization: logarithm of non-positive value");
        return {std::log(interference_r1), std::log(interference_d)};
    }

    CMatrix random_feasible_lift(int num_phases, Rng &rng)
    {
        RVector th(num_phases);
        for (int i = 0; i < num_phases; ++i)
            th[i] = rng.uniform(-std::numbers::pi, std::numbers::pi);
        return lift(PhaseVector(th));
    }

    InnerSolution solve_inner(const QuadraticForms &qf, const Pair &u_bar, const LinkBudget &lb,
                              const InnerOptions &opts)
    {
        require(std::isfinite(u_bar[0]) && std::isfinite(u_bar[1]), "solve_inner: u_bar must be finite");
        const TraceModel model(qf, lb);
        const LinearizedObjective obj(model, u_bar);
        const int n = qf.dim();

        // The iterate is carried as its Cholesky factor, V = L L^H by definition. Near the end of
        // the path the trace gaps f_i - tau are O(1/t) while the step is assembled from O(t)
        // terms; keeping V, the reduced system and the step exactly consistent with L (and in
        // extended precision) is what lets the final centering steps make progress.
        CMatrix L = CMatrix::Identity(n, n);
        auto traces_of = [&](const CMatrix &Lf) {
            const QCols P = Lf.adjoint() * model.q;
            return Vec4(P.colwise().squaredNorm().transpose());
        };
        Vec4 y = traces_of(L);
        double tau = obj.min_value(y) - 1.0;
        double t = opts.t_initial;
        int steps = 0;

        while (true)
        {
            double prev_lambda2 = std::numeric_limits<double>::infinity();
            for (int center = 0;; ++center)
            {
                if (center >= opts.max_newton_per_center || steps >= opts.max_newton_total)
                {
                    if (prev_lambda2 < 1e-1)
                        break; // near-central; the remaining decrement is rounding noise
                    throw InnerSolveFailure("barrier centering did not converge (t = " + std::to_string(t) + ")",
                                            L * L.adjoint());
                }

                // Derivatives of psi(y, tau) = -t tau - sum log(f_i(y) - tau).
                Vec4 gy = Vec4::Zero();
                double gtau = -t;
                Mat4 Hyy = Mat4::Zero();
                Vec4 Hytau = Vec4::Zero();
                double Htt = 0.0;
                for (int i = 0; i < 2; ++i)
                {
                    const double g = obj.value(i, y) - tau;
                    const Vec4 c = obj.gradient(i, y);
                    const double A = obj.received(i, y);
                    gy -= c / g;
                    gtau += 1.0 / g;
                    Hyy += c * c.transpose() / (g * g) +
                           model.a.row(i).transpose() * model.a.row(i) / (A * A * g);
                    Hytau -= c / (g * g);
                    Htt += 1.0 / (g * g);
                }

                CMatrix X;
                Vec4 dy;
                double dtau = 0.0;
                const NewtonInputs in{Hyy, Hytau, Htt, gy, gtau};
                if (t < kExtendedPrecisionFrom)
                    newton_direction<double>(L, model.q, in, X, dy, dtau);
                else
                    newton_direction<long double>(L, model.q, in, X, dy, dtau);

                Eigen::Matrix<double, 5, 1> z;
                z << dy, dtau;
                Eigen::Matrix<double, 5, 5> Hpsi;
                Hpsi << Hyy, Hytau, Hytau.transpose(), Htt;
                const double lambda2 = X.squaredNorm() + z.dot(Hpsi * z);
                ++steps;
                if (!std::isfinite(lambda2))
                    throw InnerSolveFailure("barrier Newton step is not finite", L * L.adjoint());
                if (lambda2 / 2.0 <= opts.newton_tol)
                    break;
                // Stagnation at the rounding floor of the reduced KKT system.
                if (center >= 4 && lambda2 < 1e-2 && lambda2 > 0.5 * prev_lambda2)
                    break;
                prev_lambda2 = lambda2;

                // Barrier change evaluated as a difference, not as phi(new) - phi(old): phi itself is O(t).
                Pair g0;
                for (int i = 0; i < 2; ++i)
                    g0[i] = obj.value(i, y) - tau;
                double step = 1.0;
                bool accepted = false;
                for (int ls = 0; ls < 60; ++ls, step *= 0.5)
                {
                    CMatrix I_sX = step * X;
                    I_sX.diagonal().array() += 1.0;
                    const Eigen::LLT<CMatrix> llt(I_sX);
                    if (llt.info() != Eigen::Success)
                        continue;
                    const CMatrix Mf = llt.matrixL();
                    const auto md = Mf.diagonal().real();
                    if ((md.array() <= 0.0).any())
                        continue;
                    const double ld = 2.0 * md.array().log().sum();
                    CMatrix Ln = L.triangularView<Eigen::Lower>() * Mf;
                    const Vec4 yn = traces_of(Ln);
                    const double taun = tau + step * dtau;
                    double dphi = -t * step * dtau - ld;
                    bool inside = std::isfinite(ld);
                    for (int i = 0; i < 2 && inside; ++i)
                    {
                        const double g = obj.value(i, yn) - taun;
                        inside = obj.received(i, yn) > 0.0 && g > 0.0;
                        if (inside)
                            dphi -= std::log(g / g0[i]);
                    }
                    if (!inside)
                        continue;
                    if (dphi <= -0.25 * step * lambda2)
                    {
                        L = std::move(Ln);
                        y = yn;
                        tau = taun;
                        accepted = true;
                        break;
                    }
                }
                // No descent left at working precision: the point is as centered as it can get.
                if (!accepted)
                    break;
            }

            if ((n + 2.0) / t <= opts.gap_tol)
                break;
            // Land exactly on the target instead of overshooting it by up to t_factor.
            t = std::min(t * opts.t_factor, (n + 2.0) / opts.gap_tol);
        }

        // Remove rounding drift from the unit diagonal.
        CMatrix V = L * L.adjoint();
        const RVector dscale = V.diagonal().real().cwiseSqrt().cwiseInverse();
        V = dscale.asDiagonal() * V * dscale.asDiagonal();
        hermitize(V);
        y = model.traces(V);

        InnerSolution sol;
        sol.V = std::move(V);
        sol.newton_steps = steps;
        sol.gap_bound = (n + 2.0) / t;
        for (int i = 0; i < 2; ++i)
        {
            sol.s[i] = std::log(obj.received(i, y));
            sol.u[i] = u_bar[i] - 1.0 + obj.interference(i, y) * obj.expneg[i];
        }
        sol.objective = std::min(sol.s[0] - sol.u[0], sol.s[1] - sol.u[1]);
        return sol;
    }

    CertifiedBound certify_upper_bound(const QuadraticForms &qf, const CMatrix &V, const LinkBudget &b)
    {
        const int n = qf.dim();
        require(V.rows() == n && V.cols() == n, "certify_upper_bound: V has the wrong size");
        const CMatrix P1 = b.p_s * qf.Q_sr1, R1 = b.p_r2 * qf.Q_r2r1;
        const CMatrix P2 = b.p_r2 * qf.Q_r2d, R2 = b.p_s * qf.Q_sd;

        CertifiedBound out;
        out.attained = std::max(0.0, std::min(sinr_trace_form(qf, V, Receiver::R1, b),
                                              sinr_trace_form(qf, V, Receiver::D, b)));

        // Upper estimate of max_{V in elliptope} tr(C V) - gamma sigma2; <= 0 certifies gamma.
        Eigen::SelfAdjointEigenSolver<CMatrix> es;
        auto margin = [&](double lambda, double gamma) {
            CMatrix C = lambda * (P1 - gamma * R1) + (1.0 - lambda) * (P2 - gamma * R2);
            hermitize(C);
            const RVector z = (C * V).diagonal().real();
            CMatrix Z = -C;
            Z.diagonal() += z.cast<cplx>();
            es.compute(Z, Eigen::EigenvaluesOnly);
            const double scale = C.norm();
            const double lmin = es.eigenvalues()[0] - 64.0 * n * std::numeric_limits<double>::epsilon() * scale;
            return z.sum() + n * std::max(0.0, -lmin) - gamma * b.sigma2;
        };

        // Golden-section search over lambda at a given level.
        auto best_lambda = [&](double gamma, double &value) {
            const double r = 0.5 * (std::sqrt(5.0) - 1.0);
            double lo = 0.0, hi = 1.0;
            double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
            double f1 = margin(x1, gamma), f2 = margin(x2, gamma);
            for (int it = 0; it < 40; ++it)
            {
                if (f1 <= f2)
                {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - r * (hi - lo);
                    f1 = margin(x1, gamma);
                }
                else
                {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + r * (hi - lo);
                    f2 = margin(x2, gamma);
                }
            }
            double lam = f1 <= f2 ? x1 : x2;
            value = std::min(f1, f2);
            for (double edge : {0.0, 1.0})
            {
                const double fe = margin(edge, gamma);
                if (fe < value)
                {
                    value = fe;
                    lam = edge;
                }
            }
            return lam;
        };

        const double g0 = out.attained;
        double value = 0.0;
        double lam = best_lambda(g0, value);
        if (value <= 0.0)
        {
            out.gamma = g0;
            out.lambda = lam;
            out.certified = true;
            return out;
        }

        // Grow the level until the certificate holds, then bisect.
        double lo = g0, hi = g0;
        const double floor_step = 1e-12 * std::max(1.0, g0);
        double step = std::max(1e-9 * g0, floor_step);
        bool found = false;
        for (int k = 0; k < 80 && !found; ++k)
        {
            hi = g0 + step;
            if (margin(lam, hi) <= 0.0)
                found = true;
            else
            {
                double v = 0.0;
                const double l2 = best_lambda(hi, v);
                if (v <= 0.0)
                {
                    lam = l2;
                    found = true;
                }
                else
                {
                    lo = hi;
                    step *= 4.0;
                }
            }
        }
        if (!found)
            return out;
        for (int k = 0; k < 40 && hi - lo > 1e-10 * hi; ++k)
        {
            const double mid = 0.5 * (lo + hi);
            if (margin(lam, mid) <= 0.0)
                hi = mid;
            else
                lo = mid;
        }
        out.gamma = hi;
        out.lambda = lam;
        out.certified = true;
        return out;
    }

    SuccessiveResult run_successive_approximation(const QuadraticForms &qf, const LinkBudget &b, const SdpOptions &opts, Rng &rng)
    {
        SuccessiveResult res;
        const CMatrix V_tilde = random_feasible_lift(qf.dim() - 1, rng);
        Pair u_bar = init_linearization(qf, V_tilde, b);

        Pair accepted_u_bar = u_bar; // linearization point behind the last accepted solve
        double accepted_obj = -std::numeric_limits<double>::infinity();
        InnerSolution accepted;
        bool have_accepted = false;

        for (int k = 1; k <= opts.max_outer; ++k)
        {
            InnerSolution sol = solve_inner(qf, u_bar, b, opts.inner);
            res.newton_steps += sol.newton_steps;
            res.iterations = k;

            if (have_accepted && sol.objective < accepted_obj - opts.damping_threshold)
            {
                // Step back halfway toward the last accepted linearization point.
                ++res.damping_events;
                for (int i = 0; i < 2; ++i)
                    u_bar[i] = accepted_u_bar[i] + 0.5 * (u_bar[i] - accepted_u_bar[i]);
                continue;
            }

            double err = 0.0;
            for (int i = 0; i < 2; ++i)
                err += std::abs(sol.u[i] - u_bar[i]);
            res.err_history.push_back(err);
            res.objective_history.push_back(sol.objective);

            accepted_u_bar = u_bar;
            accepted_obj = sol.objective;
            accepted = std::move(sol);
            have_accepted = true;

            res.state.k = k;
            res.state.err = err;
            if (err < opts.epsilon)
            {
                res.converged = true;
                break;
            }
            u_bar = accepted.u;
        }
        require(have_accepted, "run_successive_approximation: max_outer must be >= 1");

        res.state.V = accepted.V;
        res.state.s = accepted.s;
        res.state.u = accepted.u;
        res.state.u_bar = accepted_u_bar;
        res.objective = accepted.objective;
        const double g_r1 = sinr_trace_form(qf, accepted.V, Receiver::R1, b);
        const double g_d = sinr_trace_form(qf, accepted.V, Receiver::D, b);
        res.relaxed_rate = effective_rate(std::max(g_r1, 0.0), std::max(g_d, 0.0));
        const CertifiedBound cert = certify_upper_bound(qf, accepted.V, b);
        res.certified = cert.certified;
        res.upper_bound_rate = cert.certified ? std::max(res.relaxed_rate, std::log2(1.0 + cert.gamma)) : res.relaxed_rate;
        return res;
    }

    RankOneExtraction extract_rank_one(const CMatrix &V_star, const ChannelRealization &real, const LinkBudget &b,
                                       int num_randomizations, Rng &rng)
    {
        const int n = static_cast<int>(V_star.rows());
        require(n == real.num_phases() + 1, "extract_rank_one: V has the wrong size");
        require(num_randomizations >= 0, "extract_rank_one: negative randomization count");

        Eigen::SelfAdjointEigenSolver<CMatrix> es(V_star);
        const RVector lambda = es.eigenvalues().cwiseMax(0.0); // ascending
        const CMatrix &U = es.eigenvectors();

        // A sample x ~ CN(0, V) is proportional to conj(v) = [exp(-j theta); 1] when V is rank one,
        // so theta_m = arg(x_n) - arg(x_m) fixes the virtual last coordinate at phase zero.
        auto phases_of = [n](const CVector &x) {
            RVector th(n - 1);
            const double ref = std::arg(x[n - 1]);
            for (int m = 0; m < n - 1; ++m)
                th[m] = wrap_phase(ref - std::arg(x[m]));
            return PhaseVector(th);
        };

        RankOneExtraction best;
        best.theta = phases_of(U.col(n - 1));
        best.rate = effective_rate(sinr_both(real, best.theta, b));
        best.exact_rank_one = n < 2 || lambda[n - 2] <= 1e-6 * lambda[n - 1];
        if (best.exact_rank_one)
            return best;

        const CMatrix factor = U * lambda.cwiseSqrt().asDiagonal();
        CVector r(n);
        for (int c = 0; c < num_randomizations; ++c)
        {
            for (int i = 0; i < n; ++i)
                r[i] = rng.complex_normal();
            const PhaseVector th = phases_of(factor * r);
            const double rate = effective_rate(sinr_both(real, th, b));
            if (rate > best.rate)
            {
                best.rate = rate;
                best.theta = th;
            }
        }
        return best;
    }

    SdpResult solve_sdp(const ChannelRealization &real, const LinkBudget &b, const SdpOptions &opts, Rng &rng)
    {
        const QuadraticForms qf = build_quadratics(real);
        const SuccessiveResult alg = run_successive_approximation(qf, b, opts, rng);
        const RankOneExtraction ext = extract_rank_one(alg.state.V, real, b, opts.num_randomizations, rng);

        SdpResult out;
        out.upper_bound_rate = alg.upper_bound_rate;
        out.relaxed_rate = alg.relaxed_rate;
        out.certified = alg.certified;
        out.theta_feasible = ext.theta;
        out.feasible_rate = ext.rate;
        out.iterations = alg.iterations;
        out.converged = alg.converged;
        out.damping_events = alg.damping_events;
        out.objective_nats = alg.objective;
        out.rank_gap = alg.upper_bound_rate > 0.0 ? ext.rate / alg.upper_bound_rate : 1.0;
        return out;
    }
}
