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

#include "mimo_pass/baselines.hpp"
#include "mimo_pass/downlink_fp.hpp"
#include "mimo_pass/experiment.hpp"
#include "mimo_pass/uplink.hpp"
#include "test_support.hpp"

using namespace mimo_pass;
using namespace mimo_pass::testing;
using Catch::Approx;

TEST_CASE("ULA geometry", "[baselines]")
{
    ScenarioConfig cfg;
    UserLayout users;
    users.positions.push_back({25.0, 3.0, 0.0});

    const UlaChannel one = ula_channel(cfg, users, 1);
    REQUIRE(one.antennas.size() == 1);
    CHECK(one.antennas[0].x == 25.0);
    CHECK(one.antennas[0].y == 3.0);
    CHECK(one.antennas[0].z == 5.0);
    CHECK(std::abs(one.H(0, 0)) == Approx(cfg.xi() / cfg.a).epsilon(1e-12));
    CHECK(std::abs(one.H(0, 0)) == Approx(1.7040518425846224e-4).epsilon(1e-12));

    const UlaChannel many = ula_channel(cfg, users, 30);
    double ysum = 0.0;
    for (std::size_t i = 0; i < 30; ++i)
    {
        ysum += many.antennas[i].y;
        CHECK(many.antennas[i].x == 25.0);
        if (i > 0)
            CHECK(many.antennas[i].y - many.antennas[i - 1].y == Approx(cfg.wavelength() / 2.0).epsilon(1e-9));
    }
    CHECK(ysum / 30.0 == Approx(3.0).epsilon(1e-12));
}

TEST_CASE("ULA entries follow the free-space law", "[baselines]")
{
    ScenarioConfig cfg;
    cfg.alpha = {0.5, 1.0, 2.0, 1.0};
    Engine eng(1);
    const auto users = random_users(cfg, eng);
    const UlaChannel ula = ula_channel(cfg, users, 6);
    const double pi = std::acos(-1.0);
    const double lambda = 299792458.0 / cfg.f;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t k = 0; k < 4; ++k)
        {
            const auto &p = ula.antennas[i];
            const double D = std::hypot(p.x - users[k].x, p.y - users[k].y, p.z);
            const cx expect = std::polar(lambda / (4.0 * pi) * cfg.alpha[k] / D, -2.0 * pi / lambda * D);
            // phases are around 1e4 rad, so rounding in the phase alone is ~1e-12 relative
            CHECK(std::abs(ula.H(i, k) - expect) <= 1e-9 * std::abs(expect));
        }

    const UlaChannel again = ula_channel(cfg, users, 6);
    CHECK(std::equal(ula.H.begin(), ula.H.end(), again.H.begin()));
}

TEST_CASE("baseline downlink", "[baselines]")
{
    ScenarioConfig cfg;
    Engine eng(2);
    const auto users = random_users(cfg, eng);
    const BaselineDlResult r = run_baseline_dl(cfg, users, 5);
    CHECK(is_monotone(r.trace, 1e-9));
    CHECK(rel_err(arma::accu(arma::square(arma::abs(r.W))), cfg.P_dl()) < 1e-9);
    const UlaChannel ula = ula_channel(cfg, users, 5);
    CHECK(rel_err(weighted_sum_rate_dl(ula.H, r.W, cfg.sigma2_dl(), cfg.weights_dl_vec()), r.sum_rate_nats) < 1e-12);

    // same code path as the frozen-location PASS run
    const PrecoderMatrix W0 = rzf_initial_precoder(ula.H, cfg.sigma2_dl(), cfg.P_dl());
    const FpBcdResult direct = run_fp_fixed_channel(ula.H, W0, cfg.sigma2_dl(), cfg.P_dl(), cfg.weights_dl_vec(),
                                                    cfg.epsilon, cfg.max_iters);
    REQUIRE(direct.trace.points.size() == r.trace.points.size());
    CHECK(std::equal(direct.W.begin(), direct.W.end(), r.W.begin()));
}

TEST_CASE("baseline uplink", "[baselines]")
{
    ScenarioConfig cfg;
    Engine eng(3);
    const auto users = random_users(cfg, eng);
    const BaselineUlResult r = run_baseline_ul(cfg, users, 5);
    const UlaChannel ula = ula_channel(cfg, users, 5);
    const double direct = uplink_sum_rate_direct(ula.H, cfg.P_ul(), cfg.sigma2_ul(), cfg.weights_ul_vec());
    CHECK(rel_err(r.sum_rate_nats, direct) <= 1e-9);

    ScenarioConfig single = cfg;
    single.K = 1;
    UserLayout one;
    one.positions.push_back(users[0]);
    const UlaChannel h = ula_channel(single, one, 4);
    const double expect = std::log1p(single.P_ul() / single.sigma2_ul() * std::pow(arma::norm(h.H), 2));
    CHECK(rel_err(run_baseline_ul(single, one, 4).sum_rate_nats, expect) <= 1e-9);
}

TEST_CASE("larger arrays do better on average", "[baselines]")
{
    ScenarioConfig cfg;
    double dl_small = 0.0, dl_large = 0.0, ul_small = 0.0, ul_large = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        const UserLayout users = sample_users(cfg, seed);
        dl_small += run_baseline_dl(cfg, users, cfg.M).sum_rate_nats;
        dl_large += run_baseline_dl(cfg, users, cfg.M * cfg.N).sum_rate_nats;
        ul_small += run_baseline_ul(cfg, users, cfg.M).sum_rate_nats;
        ul_large += run_baseline_ul(cfg, users, cfg.M * cfg.N).sum_rate_nats;
    }
    CHECK(dl_large >= dl_small);
    CHECK(ul_large >= ul_small);
}
