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
#include "mimo_pass/downlink_fp.hpp"
#include "mimo_pass/grid.hpp"
#include "mimo_pass/trace.hpp"

namespace mimo_pass
{
    /// Condition-number ceiling for accepting the Gram matrix G^T G^* in zf_precoder.
    inline constexpr double zf_max_condition = 1e12;

    /// Gamma = (G^T G^*)^{-1}. Throws RankDeficiencyError for M < K or an
    /// ill-conditioned Gram matrix.
    arma::cx_mat zf_gamma(const ChannelMatrix &G);

    /// Gamma_m: the same inverse with row m of G removed. Needs M > K.
    arma::cx_mat zf_gamma_without_row(const ChannelMatrix &G, std::size_t m);

    /// W = sqrt(P / tr Gamma) G^* Gamma. G^T W is sqrt(P / tr Gamma) I and tr(W^H W) = P.
    PrecoderMatrix zf_precoder(const ChannelMatrix &G, double P);

    /// sum_k lambda_k ln(1 + (P / sigma2) / tr Gamma).
    double zf_sum_rate(const ChannelMatrix &G, double P, double sigma2, const std::vector<double> &weights);

    /// g^H Gamma_m^2 g / (1 + g^H Gamma_m g): the drop of tr Gamma when row g joins
    /// the channel whose inverse Gram is Gamma_m (Sherman-Morrison).
    double sm_trace_objective(const arma::cx_mat &gamma_m, const arma::cx_vec &g);

    /// Same with Gamma_m^2 precomputed, for use inside the grid loop.
    double sm_trace_objective(const arma::cx_mat &gamma_m, const arma::cx_mat &gamma_m_sq, const arma::cx_vec &g);

    struct ZfResult
    {
        PrecoderMatrix W;
        LocationMatrix L;
        ConvergenceTrace trace;    // objective = tr Gamma per sweep
        double sum_rate_nats = 0.0;
        std::size_t empty_grid_events = 0;
        bool hit_iteration_cap = false;
    };

    /// Single-loop hybrid beamforming: Gauss-Seidel sweeps that place each element to
    /// minimize tr Gamma, then the ZF precoder of the final layout. Requires M > K.
    ZfResult run_zf(const ScenarioConfig &cfg, const UserLayout &users, const LocationMatrix &L0,
                    const PiTable *table = nullptr);
}
