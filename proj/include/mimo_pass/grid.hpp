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
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <armadillo>

#include "mimo_pass/channel.hpp"

namespace mimo_pass
{
    /// Equally spaced candidate positions {0, L/(G-1), ..., L} on one waveguide.
    class LocationGrid
    {
    public:
        LocationGrid(double length, std::size_t count);

        std::size_t size() const { return points_.size(); }
        double operator[](std::size_t i) const { return points_[i]; }
        double length() const { return length_; }
        const std::vector<double> &points() const { return points_; }

    private:
        double length_;
        std::vector<double> points_;
    };

    /// True if grid position p keeps at least min_gap from every position in others.
    inline bool respects_gap(double p, std::span<const double> others, double min_gap)
    {
        for (double o : others)
            if (std::abs(p - o) < min_gap)
                return false;
        return true;
    }

    /// Indices of grid points that keep at least min_gap from all other elements.
    std::vector<std::size_t> feasible_grid_indices(const LocationGrid &grid, std::span<const double> others,
                                                   double min_gap);

    struct GridSearchResult
    {
        double position = 0.0;
        double value = -std::numeric_limits<double>::infinity();
        std::size_t index = 0;
        bool empty = false;   // no feasible grid point; position is the incumbent
    };

    /// Maximizes objective(i) over the feasible grid indices. Ties go to the smallest
    /// position (the first index reached). An empty feasible subset returns the
    /// incumbent with empty = true.
    template <class Objective>
    GridSearchResult grid_search_location(const LocationGrid &grid, double current, std::span<const double> others,
                                          double min_gap, Objective &&objective)
    {
        GridSearchResult best;
        best.position = current;
        bool found = false;
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            const double p = grid[i];
            if (!respects_gap(p, others, min_gap))
                continue;
            const double v = objective(i);
            if (!found || v > best.value)
            {
                best.value = v;
                best.position = p;
                best.index = i;
                found = true;
            }
        }
        best.empty = !found;
        return best;
    }

    /// Pi_{k,m}(ell) evaluated at every grid point, built once per (scenario, users).
    /// Read-only after construction, so one table can back concurrent runs.
    class PiTable
    {
    public:
        PiTable(const ScenarioConfig &cfg, const UserLayout &users);

        const LocationGrid &grid() const { return grid_; }

        /// K x G matrix; column i holds Pi_{., m}(grid[i]).
        const arma::cx_mat &waveguide(std::size_t m) const { return values_[m]; }

    private:
        LocationGrid grid_;
        std::vector<arma::cx_mat> values_;
    };

    /// Positions on waveguide m other than element n.
    std::vector<double> other_positions(const LocationMatrix &L, std::size_t m, std::size_t n);

    /// Sum of Pi over the elements of waveguide m except element n (length K).
    arma::cx_vec partial_row(const ScenarioConfig &cfg, const UserLayout &users, const LocationMatrix &L,
                             std::size_t m, std::size_t n);

    /// Pi_{., m}(ell) for all users (length K).
    arma::cx_vec pi_column(const ScenarioConfig &cfg, const UserLayout &users, std::size_t m, double ell);
}
