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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <armadillo>

#include "mimo_pass/rng.hpp"
#include "mimo_pass/scenario.hpp"

namespace mimo_pass
{
    using cx = std::complex<double>;

    /// N x M matrix of element positions; entry (n, m) is the position of element n on waveguide m.
    using LocationMatrix = arma::mat;

    /// M x K complex matrix; column k is the effective channel of user k, row m the
    /// coupling of waveguide m to every user. Serves downlink (through its transpose)
    /// and uplink directly.
    using ChannelMatrix = arma::cx_mat;

    // Waveguide and user indices are 0-based throughout.

    /// Distance between user u and the point at position ell on waveguide m.
    double distance(const ScenarioConfig &cfg, const Position &u, std::size_t m, double ell);

    /// Contribution of one element at position ell on waveguide m to user k:
    /// xi * alpha_k * exp(-j kappa (D + i_ref ell)) / (sqrt(N) D).
    cx pi_coeff(const ScenarioConfig &cfg, const UserLayout &users, std::size_t k, std::size_t m, double ell);

    /// Coherent sum of pi_coeff over the elements of one waveguide. Throws FeasibilityError
    /// for an infeasible column.
    cx effective_channel(const ScenarioConfig &cfg, const UserLayout &users, std::size_t k, std::size_t m,
                         std::span<const double> l_m);

    /// Row m of the channel matrix (length K) without the feasibility check.
    arma::cx_rowvec channel_row(const ScenarioConfig &cfg, const UserLayout &users, std::size_t m,
                                std::span<const double> l_m);

    ChannelMatrix channel_matrix(const ScenarioConfig &cfg, const UserLayout &users, const LocationMatrix &L);

    /// True iff all entries lie in [0, L_m] and every pair is at least delta_ell apart.
    bool is_feasible(const ScenarioConfig &cfg, std::span<const double> l_m);
    bool is_feasible(const ScenarioConfig &cfg, const LocationMatrix &L);

    /// Uniform sample over the feasible set of one waveguide (up to ordering): N sorted
    /// uniforms on [0, L_m - (N-1) delta_ell], the n-th shifted by n * delta_ell.
    /// Throws ConfigError when (N-1) delta_ell >= L_m.
    arma::vec random_feasible_locations(const ScenarioConfig &cfg, Rng &rng);

    /// One random feasible column per waveguide, drawn in waveguide order.
    LocationMatrix random_feasible_layout(const ScenarioConfig &cfg, Rng &rng);

    /// Sort each column ascending. Channel values are unchanged (order invariance).
    LocationMatrix sorted_layout(const LocationMatrix &L);

    inline std::span<const double> column_span(const LocationMatrix &L, std::size_t m)
    {
        return {L.colptr(m), static_cast<std::size_t>(L.n_rows)};
    }
}
