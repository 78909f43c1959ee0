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

#pragma once

#include <cstddef>
#include <vector>

#include <armadillo>

#include "mimo_pass/channel.hpp"
#include "mimo_pass/grid.hpp"
#include "mimo_pass/trace.hpp"

namespace mimo_pass
{
    /// M x K digital precoder; column k is the beamformer of user k.
    using PrecoderMatrix = arma::cx_mat;

    // ---------- Rate expressions ----------

    /// |g_k^T w_k|^2 / (sum_{j != k} |g_k^T w_j|^2 + sigma2).
    double sinr_downlink(const ChannelMatrix &G, const PrecoderMatrix &W, double sigma2, std::size_t k);

    /// Power-normalized SINR: noise term replaced by (sigma2 / P) tr(W^H W).
    /// Invariant to scaling of W. Returns 0 for W = 0.
    double sinr_bar(const ChannelMatrix &G, const PrecoderMatrix &W, double sigma2, double P, std::size_t k);

    /// sum_k lambda_k ln(1 + SINR_k) in nats.
    double weighted_sum_rate_dl(const ChannelMatrix &G, const PrecoderMatrix &W, double sigma2,
                                const std::vector<double> &weights);

    /// Same rate with sinr_bar, i.e. the rate of W after scaling to full power.
    double weighted_sum_rate_bar(const ChannelMatrix &G, const PrecoderMatrix &W, double sigma2, double P,
                                 const std::vector<double> &weights);

    /// W * sqrt(P / tr(W^H W)). Throws DegenerateError for W = 0.
    PrecoderMatrix scale_to_power(const PrecoderMatrix &W, double P);

    // ---------- Fractional-programming blocks ----------

    /// Auxiliary variables of the Lagrange and quadratic transforms, with the diagonal
    /// matrices T = Q A Lambda and U = Q Lambda Q^H kept consistent with (omega, q, lambda).
    class DualState
    {
    public:
        DualState(arma::vec omega, arma::cx_vec q, const std::vector<double> &weights);

        const arma::vec &omega() const { return omega_; }
        const arma::cx_vec &q() const { return q_; }
        const arma::vec &weights() const { return lambda_; }

        arma::cx_mat Lambda() const;
        arma::cx_mat A() const;
        arma::cx_mat Q() const;
        const arma::cx_mat &T() const { return T_; }
        const arma::cx_mat &U() const { return U_; }

    private:
        arma::vec omega_;
        arma::cx_vec q_;
        arma::vec lambda_;
        arma::cx_mat T_;
        arma::cx_mat U_;
    };

    /// omega_k = sinr_bar_k.
    arma::vec update_omega(const ChannelMatrix &G, const PrecoderMatrix &W, double sigma2, double P);

    /// q_k = P sqrt(1 + omega_k) g_k^T w_k / (sigma2 tr(W W^H) + P g_k^T W W^H g_k^*).
    /// Throws DegenerateError for W = 0.
    arma::cx_vec update_q(const ChannelMatrix &G, const PrecoderMatrix &W, double sigma2, double P,
                          const arma::vec &omega);

    /// Regularized inverse (G^* U G^T + gamma I)^{-1} G^* T with gamma = sigma2 tr(U) / P.
    /// The result is not power-scaled. Throws SingularSystemError when the system is singular.
    PrecoderMatrix update_precoder_rzf(const ChannelMatrix &G, const DualState &dual, double sigma2, double P);

    /// 2 Re tr(T^H G^T W) - tr(G^T W W^H G^* U) - (sigma2 tr(U) / P) tr(W W^H).
    double objective_fd(const ChannelMatrix &G, const PrecoderMatrix &W, const DualState &dual, double sigma2,
                        double P);

    /// Lagrange-transformed objective sum_k lambda_k (ln(1+omega_k) - omega_k + (1+omega_k) S_k / (S_k + I_k + N)).
    double lagrange_dual_objective(const ChannelMatrix &G, const PrecoderMatrix &W, const arma::vec &omega,
                                   double sigma2, double P, const std::vector<double> &weights);

    /// Sum of fractions sum_k lambda_k (1+omega_k) S_k / (S_k + I_k + N) that the
    /// quadratic transform replaces.
    double fractional_objective(const ChannelMatrix &G, const PrecoderMatrix &W, const arma::vec &omega,
                                double sigma2, double P, const std::vector<double> &weights);

    /// Quadratic-transform objective for given q.
    double quadratic_dual_objective(const ChannelMatrix &G, const PrecoderMatrix &W, const arma::vec &omega,
                                    const arma::cx_vec &q, double sigma2, double P,
                                    const std::vector<double> &weights);

    // ---------- Location sub-problem ----------

    /// Per-iteration constants of the location sub-problem: E = W T^H, F = W W^H.
    struct ScalarObjectiveCoeffs
    {
        arma::cx_mat E;
        arma::cx_mat F;
        arma::cx_mat U;

        ScalarObjectiveCoeffs(const PrecoderMatrix &W, const DualState &dual);

        /// b_m = a_m - sum_{m' != m} F(m, m') U^T conj(g~_{m'}), a_m^T the m-th row of E.
        arma::cx_vec b(const ChannelMatrix &G, std::size_t m) const;

        /// vartheta_{k,m} = F(m,m) U(k,k).
        arma::vec vartheta(std::size_t m) const;

        /// zeta for element n of waveguide m: b_m folded with the fixed part of the
        /// row, zeta_k = b_k - F(m,m) U(k,k) conj(c_k), where c = sum of the other
        /// elements' Pi on the same waveguide. With c = 0 this is b_m itself.
        arma::cx_vec zeta(const arma::cx_vec &b_m, const arma::cx_vec &fixed_part, std::size_t m) const;
    };

    /// f_m(ell) = sum_k 2 Re(zeta_k Pi_k(ell)) - vartheta_k |Pi_k(ell)|^2.
    double scalar_objective_fm(const arma::cx_vec &zeta, const arma::vec &vartheta, const arma::cx_vec &pi);

    /// Same, reading Pi from a column of a PiTable waveguide block.
    double scalar_objective_fm(const arma::cx_vec &zeta, const arma::vec &vartheta, const arma::cx_mat &pi_block,
                               std::size_t column);

    // ---------- Full algorithm ----------

    struct FpBcdOptions
    {
        bool update_locations = true;    // false freezes L (fixed-antenna baselines)
    };

    struct FpBcdResult
    {
        PrecoderMatrix W;          // scaled to tr(W^H W) = P_d
        LocationMatrix L;
        ConvergenceTrace trace;    // weighted sum-rate (nats) of the scaled precoder per iteration
        std::size_t empty_grid_events = 0;
        bool hit_iteration_cap = false;
    };

    /// FP-BCD hybrid beamforming: omega, q, W (RZF form) and Gauss-Seidel grid updates
    /// of every element location, until the fractional increase of the weighted sum-rate
    /// drops below cfg.epsilon. Returns the best iterate (the ascent is monotone, so
    /// this is the last one up to round-off).
    ///
    /// table may be null, in which case it is built from (cfg, users).
    FpBcdResult run_fp_bcd(const ScenarioConfig &cfg, const UserLayout &users, const PrecoderMatrix &W0,
                           const LocationMatrix &L0, const PiTable *table = nullptr, FpBcdOptions options = {});

    /// The digital part of FP-BCD on a fixed channel. Shares the update code path with
    /// run_fp_bcd and is used by the fixed-array baselines.
    FpBcdResult run_fp_fixed_channel(const ChannelMatrix &G, const PrecoderMatrix &W0, double sigma2, double P,
                                     const std::vector<double> &weights, double epsilon, std::size_t max_iters);
}
