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

#include "mimo_pass/uplink.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <numeric>

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

        // ln det of a Hermitian positive definite matrix; 0 for the empty matrix.
        double log_det_hpd(const arma::cx_mat &A)
        {
            if (A.n_rows == 0)
                return 0.0;
            arma::cx_mat R;
            if (arma::chol(R, A))
                return 2.0 * arma::accu(arma::log(arma::real(R.diag())));
            return std::real(arma::log_det(A));
        }

        // g^T A g^* for Hermitian A, reading g with one index skipped (skip = n for none).
        double conj_form(const arma::cx_mat &A, const cx *g, arma::uword n, arma::uword skip)
        {
            const arma::uword dim = A.n_rows;
            const cx *a = A.memptr();
            cx sum = 0.0;
            arma::uword j = 0;
            for (arma::uword jj = 0; jj < n; ++jj)
            {
                if (jj == skip)
                    continue;
                cx col = 0.0;
                arma::uword i = 0;
                for (arma::uword ii = 0; ii < n; ++ii)
                {
                    if (ii == skip)
                        continue;
                    col += g[ii] * a[i + j * dim];
                    ++i;
                }
                sum += col * std::conj(g[jj]);
                ++j;
            }
            return sum.real();
        }

        double beta_sum(const std::vector<double> &weights)
        {
            return std::accumulate(weights.begin(), weights.end(), 0.0);
        }
    }

    ReceiverMatrix mmse_detector(const ChannelMatrix &G, double P, double sigma2)
    {
        const arma::uword K = G.n_cols;
        const arma::cx_mat system = G.st() * arma::conj(G) + (sigma2 / P) * arma::eye<arma::cx_mat>(K, K);
        arma::cx_mat inv;
        if (!arma::inv(inv, system))
            throw SingularSystemError("MMSE system could not be inverted");
        return arma::conj(G) * inv;
    }

    double sinr_uplink(const ChannelMatrix &G, const arma::cx_vec &m_k, double P, double sigma2, std::size_t k)
    {
        const double norm2 = arma::accu(arma::square(arma::abs(m_k)));
        if (!(norm2 > 0.0))
            throw DegenerateError("uplink SINR needs a nonzero receiver");
        const arma::cx_rowvec out = m_k.st() * G;   // m_k^T g_j for all j
        double signal = 0.0;
        double interference = 0.0;
        for (arma::uword j = 0; j < G.n_cols; ++j)
        {
            const double v = std::norm(out(j));
            if (j == k)
                signal = v;
            else
                interference += v;
        }
        return signal / (interference + sigma2 / P * norm2);
    }

    double uplink_sum_rate_direct(const ChannelMatrix &G, double P, double sigma2,
                                  const std::vector<double> &weights)
    {
        const arma::uword M = G.n_rows;
        const arma::cx_mat I = arma::eye<arma::cx_mat>(M, M);
        double sum = 0.0;
        for (arma::uword k = 0; k < G.n_cols; ++k)
        {
            arma::cx_mat B = (sigma2 / P) * I;
            for (arma::uword j = 0; j < G.n_cols; ++j)
                if (j != k)
                    B += G.col(j) * G.col(j).t();
            const arma::cx_mat X = I + G.col(k) * G.col(k).t() * arma::inv(B);
            sum += weights[k] * std::real(arma::log_det(X));
        }
        return sum;
    }

    double uplink_sum_rate_detfree(const ChannelMatrix &G, double P, double sigma2,
                                   const std::vector<double> &weights)
    {
        const double c = P / sigma2;
        const arma::uword K = G.n_cols;
        const arma::cx_mat gram = G.t() * G;
        double sum = beta_sum(weights) * log_det_hpd(arma::eye<arma::cx_mat>(K, K) + c * gram);
        for (arma::uword k = 0; k < K; ++k)
        {
            arma::cx_mat reduced = gram;
            reduced.shed_row(k);
            reduced.shed_col(k);
            sum -= weights[k] * log_det_hpd(arma::eye<arma::cx_mat>(K - 1, K - 1) + c * reduced);
        }
        return sum;
    }

    UplinkAuxiliary::UplinkAuxiliary(const ChannelMatrix &G, std::size_t m, double P, double sigma2)
    {
        const double c = P / sigma2;
        const arma::uword K = G.n_cols;
        arma::cx_mat others = G;
        others.shed_row(m);
        const arma::cx_mat gram = others.t() * others;

        if (!arma::inv_sympd(gamma_m, arma::eye<arma::cx_mat>(K, K) + c * gram))
            throw SingularSystemError("uplink auxiliary inverse failed");

        gamma_mk.resize(K);
        for (arma::uword k = 0; k < K; ++k)
        {
            arma::cx_mat reduced = gram;
            reduced.shed_row(k);
            reduced.shed_col(k);
            if (K == 1)
            {
                gamma_mk[k].set_size(0, 0);
                continue;
            }
            if (!arma::inv_sympd(gamma_mk[k], arma::eye<arma::cx_mat>(K - 1, K - 1) + c * reduced))
                throw SingularSystemError("uplink auxiliary inverse failed");
        }
    }

    double scalar_uplink_objective(const UplinkAuxiliary &aux, const arma::cx_vec &g, double P, double sigma2,
                                   const std::vector<double> &weights)
    {
        const double c = P / sigma2;
        const arma::uword K = g.n_elem;
        const cx *gp = g.memptr();
        double value = beta_sum(weights) * std::log1p(c * conj_form(aux.gamma_m, gp, K, K));
        for (arma::uword k = 0; k < K; ++k)
        {
            if (K == 1)
                break;   // the reduced form is 0-dimensional: ln(1 + 0) = 0
            value -= weights[k] * std::log1p(c * conj_form(aux.gamma_mk[k], gp, K, k));
        }
        return value;
    }

    UplinkResult run_greedy_uplink(const ScenarioConfig &cfg, const UserLayout &users, const LocationMatrix &L0,
                                   const PiTable *table)
    {
        cfg.validate();
        if (users.size() != cfg.K)
            throw ConfigError("user layout must hold K users");
        if (!is_feasible(cfg, L0))
            throw FeasibilityError("initial location matrix is infeasible");

        std::unique_ptr<PiTable> owned;
        if (!table)
        {
            owned = std::make_unique<PiTable>(cfg, users);
            table = owned.get();
        }

        const auto start = clock_type::now();
        const double P = cfg.P_ul();
        const double sigma2 = cfg.sigma2_ul();
        const std::vector<double> weights = cfg.weights_ul_vec();
        const double gap = cfg.min_gap();
        const LocationGrid &grid = table->grid();

        UplinkResult result;
        result.trace.kind = TraceKind::uplink;
        LocationMatrix L = L0;
        ChannelMatrix G = channel_matrix(cfg, users, L);

        double current = uplink_sum_rate_detfree(G, P, sigma2, weights);
        result.trace.points.push_back({0, current, current, elapsed_ms(start)});
        if (!std::isfinite(current))
            throw NumericalError("non-finite uplink sum-rate at the initial point", result.trace);

        LocationMatrix best_L = L;
        ChannelMatrix best_G = G;
        double best = current;
        bool converged = false;
        arma::cx_vec candidate(cfg.K);

        for (std::size_t sweep = 1; sweep <= cfg.max_iters; ++sweep)
        {
            for (std::size_t m = 0; m < cfg.M; ++m)
            {
                const UplinkAuxiliary aux(G, m, P, sigma2);
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
                            return scalar_uplink_objective(aux, candidate, P, sigma2, weights);
                        });
                    if (choice.empty)
                    {
                        ++result.empty_grid_events;
                        continue;
                    }
                    const arma::cx_vec here = fixed + pi_column(cfg, users, m, L(n, m));
                    if (choice.value >= scalar_uplink_objective(aux, here, P, sigma2, weights))
                        L(n, m) = choice.position;
                }
                G.row(m) = channel_row(cfg, users, m, column_span(L, m));
            }

            const double next = uplink_sum_rate_detfree(G, P, sigma2, weights);
            result.trace.points.push_back({sweep, next, next, elapsed_ms(start)});
            if (!std::isfinite(next))
                throw NumericalError("non-finite uplink sum-rate at sweep " + std::to_string(sweep), result.trace);

            if (next >= best)
            {
                best = next;
                best_L = L;
                best_G = G;
            }
            const bool small_step = (next - current) < cfg.epsilon * std::abs(current);
            current = next;
            if (small_step)
            {
                converged = true;
                break;
            }
        }

        result.hit_iteration_cap = !converged;
        result.L = std::move(best_L);
        result.Mrx = mmse_detector(best_G, P, sigma2);
        result.sum_rate_nats = best;
        return result;
    }
}
