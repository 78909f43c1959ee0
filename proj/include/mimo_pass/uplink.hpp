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
    /// M x K linear receiver bank; column k detects user k via m_k^T r.
    using ReceiverMatrix = arma::cx_mat;

    /// G^* (G^T G^* + (sigma2 / P) I_K)^{-1}.
    ReceiverMatrix mmse_detector(const ChannelMatrix &G, double P, double sigma2);

    /// |m_k^T g_k|^2 / (sum_{j != k} |m_k^T g_j|^2 + (sigma2 / P) ||m_k||^2).
    /// Throws DegenerateError for m_k = 0.
    double sinr_uplink(const ChannelMatrix &G, const arma::cx_vec &m_k, double P, double sigma2, std::size_t k);

    /// sum_k beta_k ln det(I_M + g_k g_k^H (sum_{j != k} g_j g_j^H + (sigma2/P) I_M)^{-1}).
    double uplink_sum_rate_direct(const ChannelMatrix &G, double P, double sigma2,
                                  const std::vector<double> &weights);

    /// Determinant-free form over K x K matrices:
    /// beta_sum ln det(I_K + c G^H G) - sum_k beta_k ln det(I_{K-1} + c G_k^H G_k), c = P / sigma2.
    double uplink_sum_rate_detfree(const ChannelMatrix &G, double P, double sigma2,
                                   const std::vector<double> &weights);

    /// Inverses that make the per-element uplink objective cheap on the grid.
    struct UplinkAuxiliary
    {
        arma::cx_mat gamma_m;               // (I_K + c Gm^H Gm)^{-1}, Gm = G without row m
        std::vector<arma::cx_mat> gamma_mk; // same with user k's column also removed

        UplinkAuxiliary(const ChannelMatrix &G, std::size_t m, double P, double sigma2);
    };

    /// beta_sum ln(1 + c g^T Gamma_m g^*) - sum_k beta_k ln(1 + c g_{\k}^T Gamma_{m\k} g_{\k}^*)
    /// for a candidate row g of waveguide m.
    double scalar_uplink_objective(const UplinkAuxiliary &aux, const arma::cx_vec &g, double P, double sigma2,
                                   const std::vector<double> &weights);

    struct UplinkResult
    {
        ReceiverMatrix Mrx;
        LocationMatrix L;
        ConvergenceTrace trace;     // uplink weighted sum-rate (nats) per sweep
        double sum_rate_nats = 0.0;
        std::size_t empty_grid_events = 0;
        bool hit_iteration_cap = false;
    };

    /// Greedy hybrid receiver: Gauss-Seidel grid sweeps of the element locations on the
    /// determinant-free uplink sum-rate, then the MMSE receiver of the final layout.
    UplinkResult run_greedy_uplink(const ScenarioConfig &cfg, const UserLayout &users, const LocationMatrix &L0,
                                   const PiTable *table = nullptr);
}
