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
#include <optional>
#include <vector>

namespace mimo_pass
{
    inline constexpr double speed_of_light = 299792458.0; // m/s

    /// dBm to watts: 10^((dBm - 30) / 10).
    double dbm_to_watt(double dbm);

    /// Physical and algorithmic constants of one pinching-antenna scenario.
    ///
    /// Geometry: M waveguides run parallel to the x-axis at height a, waveguide m
    /// (0-based) sits at y = m * d. Each carries N pinching elements. K users lie in
    /// the rectangle [0, D_x] x [0, D_y] at z = 0.
    ///
    /// Derived quantities (d, L_m, delta_ell) follow the default layout unless an
    /// override is set.
    struct ScenarioConfig
    {
        std::size_t M = 5;      // waveguides
        std::size_t N = 6;      // pinching elements per waveguide
        std::size_t K = 4;      // users
        double f = 28e9;        // carrier frequency [Hz]
        double i_ref = 1.44;    // refractive index of the waveguide
        double a = 5.0;         // waveguide height [m]
        double D_x = 50.0;      // region side along x [m]
        double D_y = 6.0;       // region side along y [m]

        double sigma2_dl_dbm = -90.0;
        double sigma2_ul_dbm = -90.0;
        double P_dl_dbm = 0.0;  // total downlink power
        double P_ul_dbm = 0.0;  // per-user uplink power

        std::vector<double> weights_dl; // lambda_k; empty means uniform 1/K
        std::vector<double> weights_ul; // beta_k; empty means uniform 1/K
        std::vector<double> alpha;      // shadowing alpha_k; empty means 1

        std::size_t grid_L = 100000;    // grid points per waveguide
        double epsilon = 1e-3;          // fractional-improvement stopping threshold
        std::size_t max_iters = 100;    // hard cap on outer iterations / sweeps

        std::optional<double> spacing_override;     // d
        std::optional<double> length_override;      // L_m
        std::optional<double> min_gap_override;     // delta_ell

        double wavelength() const { return speed_of_light / f; }
        double kappa() const;                        // 2 pi / lambda
        double xi() const;                           // lambda / (4 pi)
        double spacing() const;                      // d = D_y / (M - 1), 0 for M = 1
        double waveguide_length() const;             // L_m = D_x
        double min_gap() const;                      // delta_ell = lambda / 2

        double sigma2_dl() const { return dbm_to_watt(sigma2_dl_dbm); }
        double sigma2_ul() const { return dbm_to_watt(sigma2_ul_dbm); }
        double P_dl() const { return dbm_to_watt(P_dl_dbm); }
        double P_ul() const { return dbm_to_watt(P_ul_dbm); }

        double weight_dl(std::size_t k) const;
        double weight_ul(std::size_t k) const;
        double shadowing(std::size_t k) const;

        std::vector<double> weights_dl_vec() const;
        std::vector<double> weights_ul_vec() const;

        /// Throws ConfigError on any violated invariant.
        void validate() const;
    };

    struct Position
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;
    };

    /// User positions, all in the plane z = 0.
    struct UserLayout
    {
        std::vector<Position> positions;

        std::size_t size() const { return positions.size(); }
        const Position &operator[](std::size_t k) const { return positions[k]; }
    };
}
