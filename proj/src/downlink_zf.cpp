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

#include "mimo_pass/downlink_zf.hpp"

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

        arma::cx_mat inverse_gram(const arma::cx_mat &Gsub)
        {
            const arma::cx_mat gram = Gsub.st() * arma::conj(Gsub);
            const double c = arma::cond(gram);
            if (!std::isfinite(c) || c > zf_max_condition)
                throw RankDeficiencyError("Gram matrix G^T G^* is singular or ill-conditioned");
            arma::cx_mat inv;
            if (!arma::inv(inv, gram))
                throw RankDeficiencyError("Gram matrix G^T G^* could not be inverted");
            return inv;
        }

        // h^H A h for Hermitian A (real part; the imaginary part is round-off).
        double hermitian_form(const arma::cx_mat &A, const cx *h, arma::uword K)
        {
            const cx *a = A.memptr();
            cx sum = 0.0;
            for (arma::uword j = 0; j < K; ++j)
            {
                cx col = 0.0;
                for (arma::uword i = 0; i < K; ++i)
                    col += std::conj(h[i]) * a[i + j * K];
                sum += col * h[j];
            }
            return sum.real();
        }
    }

    arma::cx_mat zf_gamma(const ChannelMatrix &G)
    {
        if (G.n_rows < G.n_cols)
            throw RankDeficiencyError("zero-forcing needs at least as many waveguides as users");
        return inverse_gram(G);
    }

    arma::cx_mat zf_gamma_without_row(const ChannelMatrix &G, std::size_t m)
    {
        if (G.n_rows <= G.n_cols)
            throw RankDeficiencyError("the rank-1 location update needs more waveguides than users (M > K)");
        arma::cx_mat reduced = G;
        reduced.shed_row(m);
        return inverse_gram(reduced);
    }

    PrecoderMatrix zf_precoder(const ChannelMatrix &G, double P)
    {
        const arma::cx_mat gamma = zf_gamma(G);
        const double tr = std::real(arma::trace(gamma));
        return std::sqrt(P / tr) * arma::conj(G) * gamma;
    }

    double zf_sum_rate(const ChannelMatrix &G, double P, double sigma2, const std::vector<double> &weights)
    {
        const double tr = std::real(arma::trace(zf_gamma(G)));
        const double per_user = std::log1p(P / sigma2 / tr);
        double sum = 0.0;
        for (std::size_t k = 0; k < G.n_cols; ++k)
            sum += weights[k] * per_user;
        return sum;
    }

    double sm_trace_objective(const arma::cx_mat &gamma_m, const arma::cx_mat &gamma_m_sq, const arma::cx_vec &g)
    {
        const arma::uword K = g.n_elem;
        const double num = hermitian_form(gamma_m_sq, g.memptr(), K);
        const double den = 1.0 + hermitian_form(gamma_m, g.memptr(), K);
        return num / den;
    }

    double sm_trace_objective(const arma::cx_mat &gamma_m, const arma::cx_vec &g)
    {
        return sm_trace_objective(gamma_m, gamma_m * gamma_m, g);
    }

    ZfResult run_zf(const ScenarioConfig &cfg, const UserLayout &users, const LocationMatrix &L0,
                    const PiTable *table)
    {
        cfg.validate();
        if (users.size() != cfg.K)
            throw ConfigError("user layout must hold K users");
        if (cfg.M <= cfg.K)
            throw RankDeficiencyError("single-loop ZF design needs M > K");
        if (!is_feasible(cfg, L0))
            throw FeasibilityError("initial location matrix is infeasible");

        std::unique_ptr<PiTable> owned;
        if (!table)
        {
            owned = std::make_unique<PiTable>(cfg, users);
            table = owned.get();
        }

        const auto start = clock_type::now();
        const double P = cfg.P_dl();
        const double sigma2 = cfg.sigma2_dl();
        const std::vector<double> weights = cfg.weights_dl_vec();
        const double gap = cfg.min_gap();
        const LocationGrid &grid = table->grid();

        ZfResult result;
        result.trace.kind = TraceKind::zf;
        LocationMatrix L = L0;
        ChannelMatrix G = channel_matrix(cfg, users, L);

        auto trace_gamma = [](const ChannelMatrix &X) { return std::real(arma::trace(zf_gamma(X))); };

        double current = trace_gamma(G);
        result.trace.points.push_back({0, current, zf_sum_rate(G, P, sigma2, weights), elapsed_ms(start)});

        LocationMatrix best_L = L;
        ChannelMatrix best_G = G;
        double best = current;
        bool converged = false;
        arma::cx_vec candidate(cfg.K);

        for (std::size_t sweep = 1; sweep <= cfg.max_iters; ++sweep)
        {
            for (std::size_t m = 0; m < cfg.M; ++m)
            {
                // Gamma_m depends only on the other waveguides' rows.
                const arma::cx_mat gamma_m = zf_gamma_without_row(G, m);
                const arma::cx_mat gamma_m_sq = gamma_m * gamma_m;
                const arma::cx_mat &block = table->waveguide(m);

                for (std::size_t n = 0; n < cfg.N; ++n)
                {
                    const std::vector<double> others = other_positions(L, m, n);
                    const arma::cx_vec fixed = partial_row(cfg, users, L, m, n);

                    const GridSearchResult choice = grid_search_location(
                        grid, L(n, m), others, gap,
                        [&](std::size_t i)
                        {
                            const cx *pi = block.colptr(i);
                            for (arma::uword k = 0; k < cfg.K; ++k)
                                candidate(k) = fixed(k) + pi[k];
                            return sm_trace_objective(gamma_m, gamma_m_sq, candidate);
                        });
                    if (choice.empty)
                    {
                        ++result.empty_grid_events;
                        continue;
                    }
                    const arma::cx_vec here = fixed + pi_column(cfg, users, m, L(n, m));
                    if (choice.value >= sm_trace_objective(gamma_m, gamma_m_sq, here))
                        L(n, m) = choice.position;
                }
                G.row(m) = channel_row(cfg, users, m, column_span(L, m));
            }

            const double next = trace_gamma(G);
            result.trace.points.push_back({sweep, next, zf_sum_rate(G, P, sigma2, weights), elapsed_ms(start)});
            if (!std::isfinite(next))
                throw NumericalError("non-finite tr Gamma at sweep " + std::to_string(sweep), result.trace);

            if (next <= best)
            {
                best = next;
                best_L = L;
                best_G = G;
            }
            const bool small_step = (current - next) < cfg.epsilon * std::abs(current);
            current = next;
            if (small_step)
            {
                converged = true;
                break;
            }
        }

        result.hit_iteration_cap = !converged;
        result.L = std::move(best_L);
        result.W = zf_precoder(best_G, P);
        result.sum_rate_nats = zf_sum_rate(best_G, P, sigma2, weights);
        return result;
    }
}
