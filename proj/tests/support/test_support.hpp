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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include <armadillo>

#include "mimo_pass/channel.hpp"
#include "mimo_pass/scenario.hpp"

namespace mimo_pass::testing
{
    using Engine = std::mt19937_64;

    inline arma::cx_mat random_cx(arma::uword rows, arma::uword cols, Engine &eng, double scale = 1.0)
    {
        std::normal_distribution<double> nd(0.0, scale);
        arma::cx_mat A(rows, cols);
        for (auto &v : A)
            v = {nd(eng), nd(eng)};
        return A;
    }

    inline arma::cx_vec random_cx_vec(arma::uword n, Engine &eng, double scale = 1.0)
    {
        return arma::cx_vec(random_cx(n, 1, eng, scale));
    }

    inline std::vector<double> random_weights(std::size_t K, Engine &eng)
    {
        std::uniform_real_distribution<double> ud(0.1, 1.0);
        std::vector<double> w(K);
        for (auto &v : w)
            v = ud(eng);
        return w;
    }

    inline double rel_err(double a, double b)
    {
        const double scale = std::max(std::abs(a), std::abs(b));
        return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
    }

    /// Small scenario on a short waveguide so tests run fast.
    inline ScenarioConfig small_config(std::size_t M, std::size_t N, std::size_t K, std::size_t grid)
    {
        ScenarioConfig cfg;
        cfg.M = M;
        cfg.N = N;
        cfg.K = K;
        cfg.D_x = 10.0;
        cfg.D_y = 4.0;
        cfg.grid_L = grid;
        return cfg;
    }

    inline UserLayout random_users(const ScenarioConfig &cfg, Engine &eng)
    {
        std::uniform_real_distribution<double> ux(0.0, cfg.D_x), uy(0.0, cfg.D_y);
        UserLayout users;
        users.positions.resize(cfg.K);
        for (auto &p : users.positions)
        {
            p.x = ux(eng);
            p.y = uy(eng);
        }
        return users;
    }

    /// Direct evaluation of the waveguide channel entry, written without the library helpers.
    inline std::complex<double> channel_entry_oracle(const ScenarioConfig &cfg, const Position &u, std::size_t m,
                                                     const std::vector<double> &positions, double alpha = 1.0)
    {
        const double pi = std::acos(-1.0);
        const double lambda = 299792458.0 / cfg.f;
        const double y = cfg.M > 1 ? cfg.D_y / static_cast<double>(cfg.M - 1) * static_cast<double>(m) : 0.0;
        std::complex<double> sum = 0.0;
        for (double ell : positions)
        {
            const double D = std::sqrt((ell - u.x) * (ell - u.x) + (y - u.y) * (y - u.y) + cfg.a * cfg.a);
            const double phase = 2.0 * pi / lambda * (D + cfg.i_ref * ell);
            const double amp = lambda / (4.0 * pi) * alpha / (std::sqrt(static_cast<double>(cfg.N)) * D);
            sum += amp * std::complex<double>(std::cos(phase), -std::sin(phase));
        }
        return sum;
    }
}
