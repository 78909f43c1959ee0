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

#include <catch2/catch_amalgamated.hpp>

#include "mimo_pass/errors.hpp"
#include "mimo_pass/uplink.hpp"
#include "test_support.hpp"

using namespace mimo_pass;
using namespace mimo_pass::testing;
using Catch::Approx;

namespace
{
    arma::cx_mat scalar(cx v)
    {
        return arma::cx_mat(1, 1, arma::fill::value(v));
    }
}

TEST_CASE("MMSE detector", "[uplink]")
{
    CHECK(std::abs(mmse_detector(scalar(1.0), 1.0, 1.0)(0, 0) - cx(0.5)) < 1e-15);
    CHECK(arma::norm(mmse_detector(arma::cx_mat(3, 2, arma::fill::zeros), 1.0, 1.0), "fro") == 0.0);
    CHECK(sinr_uplink(scalar(1.0), arma::cx_vec{cx(1.0)}, 1.0, 1.0, 0) == 1.0);
    CHECK_THROWS_AS(sinr_uplink(scalar(1.0), arma::cx_vec{cx(0.0)}, 1.0, 1.0, 0), DegenerateError);
}

TEST_CASE("uplink SINR matches termwise evaluation", "[uplink]")
{
    Engine eng(1);
    const arma::cx_mat G = random_cx(4, 3, eng);
    const arma::cx_vec v = random_cx_vec(4, eng);
    const double P = 2.0, s2 = 0.3;
    for (std::size_t k = 0; k < 3; ++k)
    {
        double sig = 0.0, intf = 0.0;
        for (arma::uword j = 0; j < 3; ++j)
        {
            cx s = 0.0;
            for (arma::uword m = 0; m < 4; ++m)
                s += v(m) * G(m, j);
            (j == k ? sig : intf) += std::norm(s);
        }
        const double expect = sig / (intf + s2 / P * std::pow(arma::norm(v), 2));
        CHECK(rel_err(sinr_uplink(G, v, P, s2, k), expect) < 1e-12);
    }
}

TEST_CASE("MMSE maximizes every user's SINR", "[uplink]")
{
    Engine eng(2);
    for (int t = 0; t < 10; ++t)
    {
        const arma::cx_mat G = random_cx(4, 3, eng);
        const arma::cx_mat Mrx = mmse_detector(G, 1.0, 0.2);
        for (std::size_t k = 0; k < 3; ++k)
        {
            const double best = sinr_uplink(G, Mrx.col(k), 1.0, 0.2, k);
            for (int p = 0; p < 100; ++p)
            {
                arma::cx_vec v = random_cx_vec(4, eng);
                v /= arma::norm(v);
                CHECK(sinr_uplink(G, v, 1.0, 0.2, k) <= best * (1.0 + 1e-12));
            }
        }
    }
}

TEST_CASE("uplink sum-rate forms agree", "[uplink]")
{
    Engine eng(3);
    const std::vector<std::pair<arma::uword, arma::uword>> shapes{{5, 3}, {3, 5}, {4, 4}, {2, 6}, {6, 1}};
    for (int t = 0; t < 200; ++t)
    {
        const auto [M, K] = shapes[static_cast<std::size_t>(t) % shapes.size()];
        const arma::cx_mat G = random_cx(M, K, eng);
        const auto w = random_weights(K, eng);
        const double direct = uplink_sum_rate_direct(G, 1.5, 0.4, w);
        CHECK(rel_err(uplink_sum_rate_detfree(G, 1.5, 0.4, w), direct) <= 1e-9);

        const arma::cx_mat Mrx = mmse_detector(G, 1.5, 0.4);
        double via_sinr = 0.0;
        for (arma::uword k = 0; k < K; ++k)
            via_sinr += w[k] * std::log1p(sinr_uplink(G, Mrx.col(k), 1.5, 0.4, k));
        CHECK(rel_err(via_sinr, direct) <= 1e-9);
    }

    SECTION("single user")
    {
        const arma::cx_mat g = random_cx(4, 1, eng);
        const double expect = 0.7 * std::log1p(2.0 / 0.5 * std::pow(arma::norm(g), 2));
        CHECK(rel_err(uplink_sum_rate_detfree(g, 2.0, 0.5, {0.7}), expect) < 1e-12);
        CHECK(rel_err(uplink_sum_rate_direct(g, 2.0, 0.5, {0.7}), expect) < 1e-12);
    }

    CHECK(uplink_sum_rate_detfree(arma::cx_mat(3, 2, arma::fill::zeros), 1.0, 1.0, {0.5, 0.5}) == 0.0);
}

TEST_CASE("scalar uplink objective", "[uplink]")
{
    Engine eng(4);
    SECTION("zero candidate row")
    {
        const arma::cx_mat G = random_cx(3, 2, eng);
        const UplinkAuxiliary aux(G, 1, 1.0, 0.5);
        CHECK(scalar_uplink_objective(aux, arma::cx_vec(2, arma::fill::zeros), 1.0, 0.5, {0.5, 0.5}) == 0.0);
    }

    SECTION("differs from the full rate by a constant")
    {
        for (int t = 0; t < 30; ++t)
        {
            const arma::uword K = 1 + static_cast<arma::uword>(t % 4);
            const arma::cx_mat G = random_cx(4, K, eng);
            const auto w = random_weights(K, eng);
            const std::size_t m = static_cast<std::size_t>(t % 4);
            const UplinkAuxiliary aux(G, m, 2.0, 0.3);
            double offset = 0.0;
            for (int c = 0; c < 10; ++c)
            {
                const arma::cx_vec g = random_cx_vec(K, eng);
                arma::cx_mat Gc = G;
                Gc.row(m) = g.st();
                const double full = uplink_sum_rate_detfree(Gc, 2.0, 0.3, w);
                const double s = scalar_uplink_objective(aux, g, 2.0, 0.3, w);
                if (c == 0)
                    offset = full - s;
                CHECK(std::abs(full - s - offset) <= 1e-9 * std::abs(full));
            }
        }
    }

    SECTION("single user has only the all-users term")
    {
        const arma::cx_mat G = random_cx(3, 1, eng);
        const UplinkAuxiliary aux(G, 0, 1.0, 1.0);
        CHECK(aux.gamma_mk[0].n_elem == 0);
        const arma::cx_vec g{cx(0.4, -0.2)};
        const double expect = 0.8 * std::log1p(std::real(aux.gamma_m(0, 0)) * std::norm(g(0)));
        CHECK(scalar_uplink_objective(aux, g, 1.0, 1.0, {0.8}) == Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("greedy uplink run", "[uplink]")
{
    auto cfg = small_config(3, 2, 3, 128);
    Engine eng(5);
    const auto users = random_users(cfg, eng);
    Rng rng(7);
    const LocationMatrix L0 = random_feasible_layout(cfg, rng);
    const UplinkResult r = run_greedy_uplink(cfg, users, L0);
    CHECK(is_monotone(r.trace, 1e-9));
    CHECK(is_feasible(cfg, r.L));
    const ChannelMatrix G = channel_matrix(cfg, users, r.L);
    CHECK(rel_err(r.sum_rate_nats, uplink_sum_rate_detfree(G, cfg.P_ul(), cfg.sigma2_ul(), cfg.weights_ul_vec())) <
          1e-12);
    CHECK(arma::approx_equal(r.Mrx, mmse_detector(G, cfg.P_ul(), cfg.sigma2_ul()), "reldiff", 1e-12));

    SECTION("restart from the result stops after one sweep")
    {
        const UplinkResult again = run_greedy_uplink(cfg, users, r.L);
        CHECK(again.trace.iterations() == 1);
        CHECK(again.sum_rate_nats >= r.sum_rate_nats * (1.0 - 1e-12));
    }
}

TEST_CASE("single user uplink places elements above the user", "[uplink]")
{
    ScenarioConfig cfg;
    cfg.M = 2;
    cfg.N = 1;
    cfg.K = 1;
    cfg.grid_L = 513;
    Engine eng(6);
    std::uniform_real_distribution<double> ux(0.0, cfg.D_x), uy(0.0, cfg.D_y);
    std::uniform_int_distribution<std::size_t> start(0, cfg.grid_L - 1);
    const LocationGrid grid(cfg.waveguide_length(), cfg.grid_L);
    for (int t = 0; t < 10; ++t)
    {
        UserLayout users;
        users.positions.push_back({ux(eng), uy(eng), 0.0});
        LocationMatrix L0(1, 2);
        L0(0, 0) = grid[start(eng)];
        L0(0, 1) = grid[start(eng)];
        const UplinkResult r = run_greedy_uplink(cfg, users, L0);
        std::size_t nearest = 0;
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (std::abs(grid[i] - users[0].x) < std::abs(grid[nearest] - users[0].x))
                nearest = i;
        CHECK(r.L(0, 0) == grid[nearest]);
        CHECK(r.L(0, 1) == grid[nearest]);
    }
}
