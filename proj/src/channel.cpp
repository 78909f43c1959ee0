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

#include "mimo_pass/channel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mimo_pass/errors.hpp"

namespace mimo_pass
{
    namespace
    {
        // Sum of Pi over the elements in ascending position order, so that any ordering of
        // the same positions gives bitwise-identical results.
        cx sum_over_elements(const ScenarioConfig &cfg, const UserLayout &users, std::size_t k, std::size_t m,
                             const std::vector<double> &sorted)
        {
            cx sum = 0.0;
            for (double ell : sorted)
                sum += pi_coeff(cfg, users, k, m, ell);
            return sum;
        }

        std::vector<double> sorted_copy(std::span<const double> l_m)
        {
            std::vector<double> v(l_m.begin(), l_m.end());
            std::sort(v.begin(), v.end());
            return v;
        }
    }

    double distance(const ScenarioConfig &cfg, const Position &u, std::size_t m, double ell)
    {
        const double dx = ell - u.x;
        const double dy = static_cast<double>(m) * cfg.spacing() - u.y;
        return std::sqrt(dx * dx + dy * dy + cfg.a * cfg.a);
    }

    cx pi_coeff(const ScenarioConfig &cfg, const UserLayout &users, std::size_t k, std::size_t m, double ell)
    {
        const double D = distance(cfg, users[k], m, ell);
        const double magnitude = cfg.xi() * cfg.shadowing(k) / (std::sqrt(static_cast<double>(cfg.N)) * D);
        return std::polar(magnitude, -cfg.kappa() * (D + cfg.i_ref * ell));
    }

    bool is_feasible(const ScenarioConfig &cfg, std::span<const double> l_m)
    {
        const double length = cfg.waveguide_length();
        const double gap = cfg.min_gap();
        for (std::size_t i = 0; i < l_m.size(); ++i)
        {
            if (!(l_m[i] >= 0.0 && l_m[i] <= length))
                return false;
            for (std::size_t j = i + 1; j < l_m.size(); ++j)
                if (std::abs(l_m[i] - l_m[j]) < gap)
                    return false;
        }
        return true;
    }

    bool is_feasible(const ScenarioConfig &cfg, const LocationMatrix &L)
    {
        for (arma::uword m = 0; m < L.n_cols; ++m)
            if (!is_feasible(cfg, column_span(L, m)))
                return false;
        return true;
    }

    arma::cx_rowvec channel_row(const ScenarioConfig &cfg, const UserLayout &users, std::size_t m,
                                std::span<const double> l_m)
    {
        const std::vector<double> sorted = sorted_copy(l_m);
        arma::cx_rowvec row(users.size());
        for (std::size_t k = 0; k < users.size(); ++k)
            row(k) = sum_over_elements(cfg, users, k, m, sorted);
        return row;
    }

    cx effective_channel(const ScenarioConfig &cfg, const UserLayout &users, std::size_t k, std::size_t m,
                         std::span<const double> l_m)
    {
        if (!is_feasible(cfg, l_m))
            throw FeasibilityError("location column of waveguide " + std::to_string(m) + " is infeasible");
        return sum_over_elements(cfg, users, k, m, sorted_copy(l_m));
    }

    ChannelMatrix channel_matrix(const ScenarioConfig &cfg, const UserLayout &users, const LocationMatrix &L)
    {
        if (L.n_cols != cfg.M || L.n_rows != cfg.N)
            throw ConfigError("location matrix must be N x M");
        ChannelMatrix G(cfg.M, users.size());
        for (std::size_t m = 0; m < cfg.M; ++m)
        {
            if (!is_feasible(cfg, column_span(L, m)))
                throw FeasibilityError("location column of waveguide " + std::to_string(m) + " is infeasible");
            G.row(m) = channel_row(cfg, users, m, column_span(L, m));
        }
        return G;
    }

    arma::vec random_feasible_locations(const ScenarioConfig &cfg, Rng &rng)
    {
        const double gap = cfg.min_gap();
        const double span = cfg.waveguide_length() - static_cast<double>(cfg.N - 1) * gap;
        if (!(span > 0.0))
            throw ConfigError("no feasible layout: (N - 1) * delta_ell must be smaller than L_m");

        std::vector<double> u(cfg.N);
        for (auto &v : u)
            v = rng.uniform(0.0, span);
        std::sort(u.begin(), u.end());

        arma::vec l(cfg.N);
        for (std::size_t n = 0; n < cfg.N; ++n)
            l(n) = u[n] + static_cast<double>(n) * gap;
        return l;
    }

    LocationMatrix random_feasible_layout(const ScenarioConfig &cfg, Rng &rng)
    {
        LocationMatrix L(cfg.N, cfg.M);
        for (std::size_t m = 0; m < cfg.M; ++m)
            L.col(m) = random_feasible_locations(cfg, rng);
        return L;
    }

    LocationMatrix sorted_layout(const LocationMatrix &L)
    {
        LocationMatrix out = L;
        for (arma::uword m = 0; m < out.n_cols; ++m)
            out.col(m) = arma::sort(out.col(m));
        return out;
    }
}
