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
#include "mimo_pass/uplink.hpp"

namespace mimo_pass
{
    /// Fixed half-wavelength uniform linear array along y, centered at [D_x/2, D_y/2, a].
    ///
    /// Each antenna-user entry follows the free-space line-of-sight law
    /// xi alpha_k exp(-j kappa D) / D. No waveguide phase and no 1/sqrt(N) split apply.
    struct UlaChannel
    {
        std::vector<Position> antennas;
        arma::cx_mat H;     // A x K
    };

    UlaChannel ula_channel(const ScenarioConfig &cfg, const UserLayout &users, std::size_t antenna_count);

    struct BaselineDlResult
    {
        PrecoderMatrix W;
        double sum_rate_nats = 0.0;
        ConvergenceTrace trace;
    };

    struct BaselineUlResult
    {
        ReceiverMatrix Mrx;
        double sum_rate_nats = 0.0;
    };

    /// Starting point for FP on a fixed channel: regularized ZF
    /// H^* (H^T H^* + (K sigma2 / P) I)^{-1}, scaled to power P.
    PrecoderMatrix rzf_initial_precoder(const ChannelMatrix &H, double sigma2, double P);

    /// Fully digital FP precoding on the fixed array.
    BaselineDlResult run_baseline_dl(const ScenarioConfig &cfg, const UserLayout &users, std::size_t antenna_count);

    /// MMSE detection on the fixed array.
    BaselineUlResult run_baseline_ul(const ScenarioConfig &cfg, const UserLayout &users, std::size_t antenna_count);
}
