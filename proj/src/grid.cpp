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

#include "mimo_pass/grid.hpp"

#include "mimo_pass/errors.hpp"

namespace mimo_pass
{
    LocationGrid::LocationGrid(double length, std::size_t count) : length_(length), points_(count)
    {
        if (count < 2)
            throw ConfigError("a location grid needs at least 2 points");
        const double denom = static_cast<double>(count - 1);
        for (std::size_t i = 0; i < count; ++i)
            points_[i] = static_cast<double>(i) * length / denom;
        points_.back() = length;
    }

    std::vector<std::size_t> feasible_grid_indices(const LocationGrid &grid, std::span<const double> others,
                                                   double min_gap)
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (respects_gap(grid[i], others, min_gap))
                out.push_back(i);
        return out;
    }

    PiTable::PiTable(const ScenarioConfig &cfg, const UserLayout &users)
        : grid_(cfg.waveguide_length(), cfg.grid_L)
    {
        values_.reserve(cfg.M);
        for (std::size_t m = 0; m < cfg.M; ++m)
        {
            arma::cx_mat block(users.size(), grid_.size());
            for (std::size_t i = 0; i < grid_.size(); ++i)
                for (std::size_t k = 0; k < users.size(); ++k)
                    block(k, i) = pi_coeff(cfg, users, k, m, grid_[i]);
            values_.push_back(std::move(block));
        }
    }

    std::vector<double> other_positions(const LocationMatrix &L, std::size_t m, std::size_t n)
    {
        std::vector<double> out;
        out.reserve(L.n_rows);
        for (arma::uword i = 0; i < L.n_rows; ++i)
            if (i != n)
                out.push_back(L(i, m));
        return out;
    }

    arma::cx_vec pi_column(const ScenarioConfig &cfg, const UserLayout &users, std::size_t m, double ell)
    {
        arma::cx_vec out(users.size());
        for (std::size_t k = 0; k < users.size(); ++k)
            out(k) = pi_coeff(cfg, users, k, m, ell);
        return out;
    }

    arma::cx_vec partial_row(const ScenarioConfig &cfg, const UserLayout &users, const LocationMatrix &L,
                             std::size_t m, std::size_t n)
    {
        arma::cx_vec out(users.size(), arma::fill::zeros);
        for (arma::uword i = 0; i < L.n_rows; ++i)
            if (i != n)
                out += pi_column(cfg, users, m, L(i, m));
        return out;
    }
}
