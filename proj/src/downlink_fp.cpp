// mimo-pass: hybrid beamforming and multiuser detection for pinching-antenna MIMO
// Copyright (C) 2026 The mimo-pass authors
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

#include "mimo_pass/downlink_fp.hpp"

#include <chrono>
#include <cmath>
#include <memory>

#include "mimo_pass/errors.hpp"

namespace mimo_pass
{
    namespace
    {
        using clock_type = std::chrono::steady_clock;

        double elapsed_ms(clock_type::time_point start)
        {
            return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
        }

        // Received-signal powers of user k: desired |g_k^T w_k|^2 and interference.
        struct UserPowers
        {
            double signal = 0.0;
            double interference = 0.0;
        };

        UserPowers user_powers(const arma::cx_mat &GtW, std::size_t k)
        {
            UserPowers p;
            for (arma::uword j = 0; j < GtW.n_cols; ++j)
            {
                const double v = std::norm(GtW(k, j));
                if (j == k)
                    p.signal = v;
                else
                    p.interference += v;
            }
            return p;
        }

        void check_dims(const ChannelMatrix &G, const PrecoderMatrix &W)
        {
            if (W.n_rows != G.n_rows || W.n_cols != G.n_cols)
                throw ConfigError("precoder must have the shape of the channel matrix (M x K)");
        }

        double power_of(const PrecoderMatrix &W)
        {
            return arma::accu(arma::square(arma::abs(W)));
        }

        struct DigitalStep
        {
            PrecoderMatrix W;
            DualState dual;
        };

        // omega and q from the current point, then the RZF precoder under the new duals.
        DigitalStep digital_step(const ChannelMatrix &G, const PrecoderMatrix &W, double sigma2, double P,
                                 const std::vector<double> &weights)
        {
            arma::vec omega = update_omega(G, W, sigma2, P);
            arma::cx_vec q = update_q(G, W, sigma2, P, omega);
            DualState dual(std::move(omega), std::move(q), weights);
            PrecoderMatrix next = update_precoder_rzf(G, dual, sigma2, P);
            return {std::move(next), std::move(dual)};
        }

        // Gauss-Seidel pass over all element locations at fixed (W, T, U).
        void sweep_locations(const ScenarioConfig &cfg, const UserLayout &users, const PiTable &table,
                             const PrecoderMatrix &W, const DualState &dual, ChannelMatrix &G, LocationMatrix &L,
                             std::size_t &empty_events)
        {
            const ScalarObjectiveCoeffs coeffs(W, dual);
            const double gap = cfg.min_gap();
            const LocationGrid &grid = table.grid();

            for (std::size_t m = 0; m < cfg.M; ++m)
            {
                const arma::cx_vec b = coeffs.b(G, m);
                const arma::vec vartheta = coeffs.vartheta(m);
                const arma::cx_mat &block = table.waveguide(m);

                for (std::size_t n = 0; n < cfg.N; ++n)
                {
                    const std::vector<double> others = other_positions(L, m, n);
                    const arma::cx_vec zeta = coeffs.zeta(b, partial_row(cfg, users, L, m, n), m);

                    const GridSearchResult best = grid_search_location(
                        grid, L(n, m), others, gap,
                        [&](std::size_t i) { return scalar_objective_fm(zeta, vartheta, block, i); });
                    if (best.empty)
                    {
                        ++empty_events;
                        continue;
                    }
                    // The incumbent may sit off-grid; keep it unless the grid does at least as well.
                    const double incumbent = scalar_objective_fm(zeta, vartheta, pi_column(cfg, users, m, L(n, m)));
                    if (best.value >= incumbent)
                        L(n, m) = best.position;
                }
                G.row(m) = channel_row(cfg, users, m, column_span(L, m));
            }
        }

        using LocateFn = void(const PrecoderMatrix &, const DualState &, ChannelMatrix &, LocationMatrix &);

        struct FpLoopInput
        {
            double sigma2;
            double P;
            std::vector<double> weights;
            double epsilon;
            std::size_t max_iters;
        };

        // Shared outer loop. locate == nullptr freezes the channel.
        template <class Locate>
        FpBcdResult fp_loop(ChannelMatrix G, PrecoderMatrix W, LocationMatrix L, const FpLoopInput &in,
                            Locate *locate)
        {
            const auto start = clock_type::now();
            FpBcdResult result;
            result.trace.kind = TraceKind::fp_bcd;

            auto rate = [&](const PrecoderMatrix &X)
            { return weighted_sum_rate_dl(G, scale_to_power(X, in.P), in.sigma2, in.weights); };

            double current = rate(W);
            result.trace.points.push_back({0, current, current, elapsed_ms(start)});
            if (!std::isfinite(current))
                throw NumericalError("non-finite sum-rate at the initial point", result.trace);

            PrecoderMatrix best_W = W;
            LocationMatrix best_L = L;
            double best = current;
            bool converged = false;

            for (std::size_t it = 1; it <= in.max_iters; ++it)
            {
                DigitalStep step = digital_step(G, W, in.sigma2, in.P, in.weights);
                W = std::move(step.W);
                if (locate)
                    (*locate)(W, step.dual, G, L);
                const double next = rate(W);
                result.trace.points.push_back({it, next, next, elapsed_ms(start)});
                if (!std::isfinite(next))
                    throw NumericalError("non-finite sum-rate at iteration " + std::to_string(it), result.trace);

                if (next >= best)
                {
                    best = next;
                    best_W = W;
                    best_L = L;
                }
                const bool small_step = (next - current) < in.epsilon * std::abs(current);
                current = next;
                if (small_step)
                {
                    converged = true;
                    break;
                }
            }

            result.hit_iteration_cap = !converged;
            result.W = scale_to_power(best_W, in.P);
            result.L = std::move(best_L);
            return result;
        }
    }

    double sinr_downlink(const ChannelMatrix &G, const PrecoderMatrix &W, double sigma2, std::size_t k)
    {
        check_dims(G, W);
        const arma::cx_mat GtW = G.st() * W;
        const UserPowers p = user_powers(GtW, k);
        return p.signal / (p.interference + sigma2);
    }

    double sinr_bar(const ChannelMatrix &G, const PrecoderMatrix &W, double sigma2, double P, std::size_t k)
    {
        check_dims(G, W);
        const arma::cx_mat GtW = G.st() * W;
        const UserPowers p = user_powers(GtW, k);
        const double denom = p.interference + sigma2 / P * power_of(W);
        if (p.signal == 0.0)
            return 0.0;
        return p.signal / denom;
    }

    double weighted_sum_rate_dl(const ChannelMatrix &G, const PrecoderMatrix &W, double sigma2,
                                const std::vector<double> &weights)
    {
        check_dims(G, W);
        const arma::cx_mat GtW = G.st() * W;
        double sum = 0.0;
        for (std::size_t k = 0; k < G.n_cols; ++k)
        {
            const UserPowers p = user_powers(GtW, k);
            sum += weights[k] * std::log1p(p.signal / (p.interference + sigma2));
        }
        return sum;
    }

    double weighted_sum_rate_bar(const ChannelMatrix &G, const PrecoderMatrix &W, double sigma2, double P,
                                 const std::vector<double> &weights)
    {
        double sum = 0.0;
        for (std::size_t k = 0; k < G.n_cols; ++k)
            sum += weights[k] * std::log1p(sinr_bar(G, W, sigma2, P, k));
        return sum;
    }

    PrecoderMatrix scale_to_power(const PrecoderMatrix &W, double P)
    {
        const double power = power_of(W);
        if (!(power > 0.0))
            throw DegenerateError("cannot scale an all-zero precoder to full power");
        return W * std::sqrt(P / power);
    }

    DualState::DualState(arma::vec omega, arma::cx_vec q, const std::vector<double> &weights)
        : omega_(std::move(omega)), q_(std::move(q)), lambda_(weights)
    {
        if (omega_.n_elem != q_.n_elem || lambda_.n_elem != q_.n_elem)
            throw ConfigError("dual state dimensions disagree");
        const arma::uword K = q_.n_elem;
        T_.zeros(K, K);
        U_.zeros(K, K);
        for (arma::uword k = 0; k < K; ++k)
        {
            T_(k, k) = q_(k) * std::sqrt(1.0 + omega_(k)) * lambda_(k);
            U_(k, k) = lambda_(k) * std::norm(q_(k));
        }
    }

    arma::cx_mat DualState::Lambda() const
    {
        return arma::diagmat(arma::conv_to<arma::cx_vec>::from(lambda_));
    }

    arma::cx_mat DualState::A() const
    {
        return arma::diagmat(arma::conv_to<arma::cx_vec>::from(arma::sqrt(1.0 + omega_)));
    }

    arma::cx_mat DualState::Q() const
    {
        return arma::diagmat(q_);
    }

    arma::vec update_omega(const ChannelMatrix &G, const PrecoderMatrix &W, double sigma2, double P)
    {
        arma::vec omega(G.n_cols);
        for (std::size_t k = 0; k < G.n_cols; ++k)
            omega(k) = sinr_bar(G, W, sigma2, P, k);
        return omega;
    }

    arma::cx_vec update_q(const ChannelMatrix &G, const PrecoderMatrix &W, double sigma2, double P,
                          const arma::vec &omega)
    {
        check_dims(G, W);
        const double power = power_of(W);
        if (!(power > 0.0))
            throw DegenerateError("q update needs a nonzero precoder");
        const arma::cx_mat GtW = G.st() * W;
        arma::cx_vec q(G.n_cols);
        for (std::size_t k = 0; k < G.n_cols; ++k)
        {
            // tr(W W^H g_k^* g_k^T) = sum_j |g_k^T w_j|^2
            const double received = arma::accu(arma::square(arma::abs(GtW.row(k))));
            q(k) = P * std::sqrt(1.0 + omega(k)) * GtW(k, k) / (sigma2 * power + P * received);
        }
        return q;
    }

    PrecoderMatrix update_precoder_rzf(const ChannelMatrix &G, const DualState &dual, double sigma2, double P)
    {
        const arma::uword M = G.n_rows;
        const double gamma = sigma2 * std::real(arma::trace(dual.U())) / P;
        const arma::cx_mat Gc = arma::conj(G);
        const arma::cx_mat system = Gc * dual.U() * G.st() + gamma * arma::eye<arma::cx_mat>(M, M);
        const arma::cx_mat rhs = Gc * dual.T();
        arma::cx_mat W;
        if (!arma::solve(W, system, rhs, arma::solve_opts::no_approx))
            throw SingularSystemError("RZF precoder system is singular");
        return W;
    }

    double objective_fd(const ChannelMatrix &G, const PrecoderMatrix &W, const DualState &dual, double sigma2,
                        double P)
    {
        check_dims(G, W);
        const arma::cx_mat GtW = G.st() * W;
        const double linear = 2.0 * std::real(arma::trace(dual.T().t() * GtW));
        const double quadratic = std::real(arma::trace(GtW * GtW.t() * dual.U()));
        const double penalty = sigma2 * std::real(arma::trace(dual.U())) / P * power_of(W);
        return linear - quadratic - penalty;
    }

    double fractional_objective(const ChannelMatrix &G, const PrecoderMatrix &W, const arma::vec &omega,
                                double sigma2, double P, const std::vector<double> &weights)
    {
        check_dims(G, W);
        const arma::cx_mat GtW = G.st() * W;
        const double noise = sigma2 / P * power_of(W);
        double sum = 0.0;
        for (std::size_t k = 0; k < G.n_cols; ++k)
        {
            const UserPowers p = user_powers(GtW, k);
            sum += weights[k] * (1.0 + omega(k)) * p.signal / (p.signal + p.interference + noise);
        }
        return sum;
    }

    double lagrange_dual_objective(const ChannelMatrix &G, const PrecoderMatrix &W, const arma::vec &omega,
                                   double sigma2, double P, const std::vector<double> &weights)
    {
        double sum = fractional_objective(G, W, omega, sigma2, P, weights);
        for (std::size_t k = 0; k < G.n_cols; ++k)
            sum += weights[k] * (std::log1p(omega(k)) - omega(k));
        return sum;
    }

    double quadratic_dual_objective(const ChannelMatrix &G, const PrecoderMatrix &W, const arma::vec &omega,
                                    const arma::cx_vec &q, double sigma2, double P,
                                    const std::vector<double> &weights)
    {
        check_dims(G, W);
        const arma::cx_mat GtW = G.st() * W;
        const double noise = sigma2 / P * power_of(W);
        double sum = 0.0;
        for (std::size_t k = 0; k < G.n_cols; ++k)
        {
            const UserPowers p = user_powers(GtW, k);
            const double q2 = std::norm(q(k));
            sum += weights[k] * (2.0 * std::sqrt(1.0 + omega(k)) * std::real(std::conj(q(k)) * GtW(k, k))
                                 - q2 * (p.signal + p.interference) - q2 * noise);
        }
        return sum;
    }

    ScalarObjectiveCoeffs::ScalarObjectiveCoeffs(const PrecoderMatrix &W, const DualState &dual)
        : E(W * dual.T().t()), F(W * W.t()), U(dual.U())
    {
    }

    arma::cx_vec ScalarObjectiveCoeffs::b(const ChannelMatrix &G, std::size_t m) const
    {
        arma::cx_vec out = E.row(m).st();
        const arma::cx_mat Ut = U.st();
        for (arma::uword mp = 0; mp < G.n_rows; ++mp)
        {
            if (mp == m)
                continue;
            out -= F(m, mp) * (Ut * arma::conj(G.row(mp)).st());
        }
        return out;
    }

    arma::vec ScalarObjectiveCoeffs::vartheta(std::size_t m) const
    {
        return std::real(F(m, m)) * arma::real(U.diag());
    }

    arma::cx_vec ScalarObjectiveCoeffs::zeta(const arma::cx_vec &b_m, const arma::cx_vec &fixed_part,
                                             std::size_t m) const
    {
        return b_m - F(m, m) * (U.st() * arma::conj(fixed_part));
    }

    double scalar_objective_fm(const arma::cx_vec &zeta, const arma::vec &vartheta, const arma::cx_vec &pi)
    {
        double sum = 0.0;
        for (arma::uword k = 0; k < zeta.n_elem; ++k)
            sum += 2.0 * std::real(zeta(k) * pi(k)) - vartheta(k) * std::norm(pi(k));
        return sum;
    }

    double scalar_objective_fm(const arma::cx_vec &zeta, const arma::vec &vartheta, const arma::cx_mat &pi_block,
                               std::size_t column)
    {
        const cx *pi = pi_block.colptr(column);
        const cx *z = zeta.memptr();
        const double *v = vartheta.memptr();
        double sum = 0.0;
        for (arma::uword k = 0; k < zeta.n_elem; ++k)
            sum += 2.0 * (z[k].real() * pi[k].real() - z[k].imag() * pi[k].imag()) - v[k] * std::norm(pi[k]);
        return sum;
    }

    FpBcdResult run_fp_bcd(const ScenarioConfig &cfg, const UserLayout &users, const PrecoderMatrix &W0,
                           const LocationMatrix &L0, const PiTable *table, FpBcdOptions options)
    {
        cfg.validate();
        if (users.size() != cfg.K)
            throw ConfigError("user layout must hold K users");
        if (!is_feasible(cfg, L0))
            throw FeasibilityError("initial location matrix is infeasible");

        const ChannelMatrix G0 = channel_matrix(cfg, users, L0);
        check_dims(G0, W0);
        if (!(power_of(W0) > 0.0))
            throw DegenerateError("FP-BCD needs a nonzero initial precoder");

        FpLoopInput in{cfg.sigma2_dl(), cfg.P_dl(), cfg.weights_dl_vec(), cfg.epsilon, cfg.max_iters};

        if (!options.update_locations)
        {
            auto *none = static_cast<LocateFn *>(nullptr);
            return fp_loop(G0, W0, L0, in, none);
        }

        std::unique_ptr<PiTable> owned;
        if (!table)
        {
            owned = std::make_unique<PiTable>(cfg, users);
            table = owned.get();
        }

        std::size_t empty_events = 0;
        auto locate = [&](const PrecoderMatrix &W, const DualState &dual, ChannelMatrix &G, LocationMatrix &L)
        { sweep_locations(cfg, users, *table, W, dual, G, L, empty_events); };

        FpBcdResult result = fp_loop(G0, W0, L0, in, &locate);
        result.empty_grid_events = empty_events;
        return result;
    }

    FpBcdResult run_fp_fixed_channel(const ChannelMatrix &G, const PrecoderMatrix &W0, double sigma2, double P,
                                     const std::vector<double> &weights, double epsilon, std::size_t max_iters)
    {
        check_dims(G, W0);
        if (!(power_of(W0) > 0.0))
            throw DegenerateError("FP needs a nonzero initial precoder");
        FpLoopInput in{sigma2, P, weights, epsilon, max_iters};
        auto *none = static_cast<LocateFn *>(nullptr);
        return fp_loop(G, W0, LocationMatrix{}, in, none);
    }
}
