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

#include "mimo_pass/baselines.hpp"

#include <cmath>

#include "mimo_pass/errors.hpp"

namespace mimo_pass
{
    UlaChannel ula_channel(const ScenarioConfig &cfg, const UserLayout &users, std::size_t antenna_count)
    {
        if (antenna_count < 1)
            throw ConfigError("a baseline array needs at least one antenna");

        UlaChannel out;
        const double half_lambda = 0.5 * cfg.wavelength();
        const double center = 0.5 * static_cast<double>(antenna_count - 1);
        out.antennas.reserve(antenna_count);
        for (std::size_t i = 0; i < antenna_count; ++i)
            out.antennas.push_back({0.5 * cfg.D_x, 0.5 * cfg.D_y + (static_cast<double>(i) - center) * half_lambda, cfg.a});

        out.H.set_size(antenna_count, users.size());
        for (std::size_t i = 0; i < antenna_count; ++i)
        {
            const Position &p = out.antennas[i];
            for (std::size_t k = 0; k < users.size(); ++k)
            {
                const double dx = p.x - users[k].x;
                const double dy = p.y - users[k].y;
                const double dz = p.z - users[k].z;
                const double D = std::sqrt(dx * dx + dy * dy + dz * dz);
                out.H(i, k) = std::polar(cfg.xi() * cfg.shadowing(k) / D, -cfg.kappa() * D);
            }
        }
        return out;
    }

    PrecoderMatrix rzf_initial_precoder(const ChannelMatrix &H, double sigma2, double P)
    {
        const arma::uword K = H.n_cols;
        const double reg = static_cast<double>(K) * sigma2 / P;
        const arma::cx_mat system = H.st() * arma::conj(H) + reg * arma::eye<arma::cx_mat>(K, K);
        arma::cx_mat inv;
        if (!arma::inv(inv, system))
            throw SingularSystemError("RZF initializer system could not be inverted");
        return scale_to_power(arma::conj(H) * inv, P);
    }

    BaselineDlResult run_baseline_dl(const ScenarioConfig &cfg, const UserLayout &users, std::size_t antenna_count)
    {
        cfg.validate();
        const UlaChannel ula = ula_channel(cfg, users, antenna_count);
        const double sigma2 = cfg.sigma2_dl();
        const double P = cfg.P_dl();
        const std::vector<double> weights = cfg.weights_dl_vec();

        const PrecoderMatrix W0 = rzf_initial_precoder(ula.H, sigma2, P);
        FpBcdResult fp = run_fp_fixed_channel(ula.H, W0, sigma2, P, weights, cfg.epsilon, cfg.max_iters);

        BaselineDlResult out;
        out.sum_rate_nats = weighted_sum_rate_dl(ula.H, fp.W, sigma2, weights);
        out.W = std::move(fp.W);
        out.trace = std::move(fp.trace);
        return out;
    }

    BaselineUlResult run_baseline_ul(const ScenarioConfig &cfg, const UserLayout &users, std::size_t antenna_count)
    {
        cfg.validate();
        const UlaChannel ula = ula_channel(cfg, users, antenna_count);
        BaselineUlResult out;
        out.Mrx = mmse_detector(ula.H, cfg.P_ul(), cfg.sigma2_ul());
        out.sum_rate_nats = uplink_sum_rate_detfree(ula.H, cfg.P_ul(), cfg.sigma2_ul(), cfg.weights_ul_vec());
        return out;
    }
}
