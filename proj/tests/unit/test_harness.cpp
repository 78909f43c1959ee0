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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "mimo_pass/cli.hpp"
#include "mimo_pass/config_file.hpp"
#include "mimo_pass/errors.hpp"
#include "mimo_pass/experiment.hpp"
#include "test_support.hpp"

using namespace mimo_pass;
using namespace mimo_pass::testing;
using Catch::Approx;
namespace fs = std::filesystem;

namespace
{
    std::size_t count_lines(const fs::path &p)
    {
        std::ifstream in(p);
        std::size_t n = 0;
        std::string line;
        while (std::getline(in, line))
            ++n;
        return n;
    }

    fs::path fresh_dir(const std::string &name)
    {
        const fs::path dir = fs::temp_directory_path() / ("mimo_pass_test_" + name);
        fs::remove_all(dir);
        return dir;
    }

    int run_cli(std::vector<std::string> args, std::string *out_text = nullptr, std::string *err_text = nullptr)
    {
        args.insert(args.begin(), "mimo_pass_cli");
        std::vector<const char *> argv;
        for (const auto &a : args)
            argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int rc = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
        if (out_text)
            *out_text = out.str();
        if (err_text)
            *err_text = err.str();
        return rc;
    }

    ScenarioConfig quick_config()
    {
        ScenarioConfig cfg;
        cfg.grid_L = 256;
        return cfg;
    }
}

TEST_CASE("user sampling", "[harness]")
{
    ScenarioConfig cfg;
    const UserLayout a = sample_users(cfg, 42), b = sample_users(cfg, 42), c = sample_users(cfg, 43);
    REQUIRE(a.size() == cfg.K);
    bool differs = false;
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        CHECK(a[k].x == b[k].x);
        CHECK(a[k].y == b[k].y);
        differs = differs || a[k].x != c[k].x;
    }
    CHECK(differs);

    double sx = 0.0, sy = 0.0;
    std::size_t n = 0;
    for (std::uint64_t seed = 0; seed < 2500; ++seed)
        for (const auto &p : sample_users(cfg, seed).positions)
        {
            CHECK((p.x >= 0.0 && p.x <= cfg.D_x && p.y >= 0.0 && p.y <= cfg.D_y && p.z == 0.0));
            sx += p.x;
            sy += p.y;
            ++n;
        }
    REQUIRE(n == 10000);
    CHECK(std::abs(sx / n - cfg.D_x / 2.0) < 3.0 * cfg.D_x / std::sqrt(12.0 * n));
    CHECK(std::abs(sy / n - cfg.D_y / 2.0) < 3.0 * cfg.D_y / std::sqrt(12.0 * n));

    // users come first in the seed stream
    const SeedScenario sc = seed_scenario(cfg, 42);
    for (std::size_t k = 0; k < a.size(); ++k)
        CHECK(sc.users[k].x == a[k].x);
    CHECK(is_feasible(cfg, sc.L0));
}

TEST_CASE("mode and sweep parsing", "[harness]")
{
    for (const char *name : {"dl-fp", "dl-zf", "ul-mmse", "dl-baseline-mimo", "dl-baseline-mmimo", "ul-baseline-mimo",
                             "ul-baseline-mmimo"})
        CHECK(to_string(parse_mode(name)) == name);
    CHECK_THROWS_AS(parse_mode("dl-magic"), ConfigError);

    const Sweep s = parse_sweep("power:-10,0,10");
    CHECK(s.axis == SweepAxis::power);
    CHECK(s.values == std::vector<double>{-10.0, 0.0, 10.0});
    CHECK_THROWS_AS(parse_sweep("power"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("speed:1"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("K:2,x"), ConfigError);

    const ScenarioConfig base;
    CHECK(apply_sweep(base, Mode::dl_fp, SweepAxis::power, 7.0).P_dl_dbm == 7.0);
    CHECK(apply_sweep(base, Mode::ul_mmse, SweepAxis::power, 7.0).P_ul_dbm == 7.0);
    CHECK(apply_sweep(base, Mode::dl_fp, SweepAxis::K, 3.0).K == 3);
    CHECK_THROWS_AS(apply_sweep(base, Mode::dl_fp, SweepAxis::N, 2.5), ConfigError);
}

TEST_CASE("config files", "[harness]")
{
    ExperimentSpec spec = preset("desk");
    CHECK(spec.scenario.grid_L == 4096);
    CHECK(spec.seeds.size() == 20);
    CHECK(preset("full").seeds.size() == 500);
    CHECK_THROWS_AS(preset("huge"), ConfigError);

    std::istringstream good("# comment\n\nK = 3\nP_dl_dbm=10\nweights_dl = 0.2, 0.3, 0.5\nmode = ul-mmse\n"
                            "seed_list = 4,9\nsweep = D_x:20,40\ndelta_ell = 0.01\n");
    apply_config(spec, good);
    CHECK(spec.scenario.K == 3);
    CHECK(spec.scenario.P_dl_dbm == 10.0);
    CHECK(spec.scenario.weights_dl == std::vector<double>{0.2, 0.3, 0.5});
    CHECK(spec.mode == Mode::ul_mmse);
    CHECK(spec.seeds == std::vector<std::uint64_t>{4, 9});
    CHECK(spec.sweep->values.size() == 2);
    CHECK(spec.scenario.min_gap() == 0.01);
    CHECK_NOTHROW(spec.validate());

    std::istringstream unknown("colour = red\n");
    CHECK_THROWS_AS(apply_config(spec, unknown), ConfigError);
    std::istringstream bad("K = three\n");
    CHECK_THROWS_AS(apply_config(spec, bad), ConfigError);
    std::istringstream nokey("just text\n");
    CHECK_THROWS_AS(apply_config(spec, nokey), ConfigError);
    CHECK_THROWS_AS(apply_config_file(spec, "/nonexistent/mimo.cfg"), ConfigError);

    ExperimentSpec empty = preset("desk");
    empty.seeds.clear();
    CHECK_THROWS_AS(empty.validate(), ConfigError);
}

TEST_CASE("experiment records and aggregation", "[harness]")
{
    ExperimentSpec spec;
    spec.scenario = quick_config();
    spec.mode = Mode::dl_zf;
    spec.seeds = {0, 1};
    const auto records = run_experiment(spec);
    REQUIRE(records.size() == 2);
    const auto rows = aggregate(records);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].n_seeds == 2);
    CHECK(rows[0].mean_bits == Approx((records[0].sum_rate_bits + records[1].sum_rate_bits) / 2.0).epsilon(1e-15));
    for (const auto &r : records)
    {
        CHECK(r.ok);
        CHECK(r.sum_rate_bits == Approx(r.sum_rate_nats / std::log(2.0)).epsilon(1e-15));
        CHECK(r.sum_rate_nats >= 0.0);
    }

    spec.sweep = Sweep{SweepAxis::power, {-10.0, 0.0, 10.0}};
    spec.seeds = {3};
    const auto swept = run_experiment(spec);
    REQUIRE(swept.size() == 3);
    CHECK(swept[0].sweep_value == -10.0);
    CHECK(swept[2].sweep_value == 10.0);
    CHECK(aggregate(swept).size() == 3);
    CHECK(swept[0].sum_rate_bits < swept[2].sum_rate_bits);
    CHECK(trace_file_name(swept[1]) == "dl-zf_power=0_3.csv");
}

TEST_CASE("dl-fp runs record their ZF warm start", "[harness]")
{
    const ScenarioConfig cfg = quick_config();
    for (std::uint64_t seed = 0; seed < 3; ++seed)
    {
        const RunRecord fp = run_single(cfg, Mode::dl_fp, seed, true);
        const RunRecord zf = run_single(cfg, Mode::dl_zf, seed);
        REQUIRE(fp.warm_start_bits);
        CHECK(*fp.warm_start_bits == zf.sum_rate_bits);
        CHECK(fp.sum_rate_bits >= *fp.warm_start_bits);
        REQUIRE(fp.trace);
        CHECK(fp.trace->kind == TraceKind::fp_bcd);
    }
}

TEST_CASE("runs are deterministic", "[harness]")
{
    const ScenarioConfig cfg = quick_config();
    for (Mode mode : {Mode::dl_fp, Mode::ul_mmse, Mode::dl_baseline_mmimo, Mode::ul_baseline_mimo})
    {
        const RunRecord a = run_single(cfg, mode, 5), b = run_single(cfg, mode, 5);
        CHECK(a.sum_rate_nats == b.sum_rate_nats);
        CHECK(a.iters == b.iters);
    }
}

TEST_CASE("failures are flagged, not thrown", "[harness]")
{
    const ScenarioConfig cfg = quick_config();
    const RunRecord h = run_single(cfg, Mode::dl_baseline_hmimo, 0);
    CHECK_FALSE(h.ok);
    CHECK(h.flags == std::vector<std::string>{"unsupported_algorithm"});

    ScenarioConfig square = cfg;
    square.K = square.M;
    const RunRecord zf = run_single(square, Mode::dl_zf, 0);
    CHECK_FALSE(zf.ok);
    REQUIRE(zf.flags.size() == 1);
    CHECK(zf.flags[0].rfind("error:", 0) == 0);
    CHECK(aggregate({zf})[0].n_seeds == 0);
}

TEST_CASE("CSV layout", "[harness]")
{
    RunRecord r;
    r.mode = Mode::dl_fp;
    r.seed = 7;
    r.sum_rate_bits = 2.0;
    r.sum_rate_nats = 2.0 * std::log(2.0);
    r.iters = 3;
    r.warm_start_bits = 1.5;
    r.flags = {"empty_grid:2", "iteration_cap"};
    std::ostringstream os;
    write_runs_csv(os, {r});
    std::istringstream lines(os.str());
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "mode,sweep_axis,sweep_value,seed,sum_rate_bits,sum_rate_nats,iters,wall_ms,warm_start_bits,flags");
    CHECK(row.rfind("dl-fp,none,,7,2,", 0) == 0);
    CHECK(row.find(",1.5,empty_grid:2|iteration_cap") != std::string::npos);

    std::ostringstream agg;
    write_aggregate_csv(agg, aggregate({r}));
    CHECK(agg.str().rfind("mode,sweep_axis,sweep_value,n_seeds,mean_bits,std_bits\ndl-fp,none,,1,2,0\n", 0) == 0);
}

TEST_CASE("command line", "[harness]")
{
    SECTION("runs and aggregate are written")
    {
        const fs::path dir = fresh_dir("cli_runs");
        std::string out;
        REQUIRE(run_cli({"--preset", "desk", "--grid", "256", "--mode", "dl-zf", "--seeds", "3", "--out", dir.string()},
                        &out) == 0);
        CHECK(count_lines(dir / "runs.csv") == 4);
        CHECK(count_lines(dir / "aggregate.csv") == 2);
        CHECK(out.find("dl-zf: 3 seeds") != std::string::npos);
        CHECK_FALSE(fs::exists(dir / "traces"));
        fs::remove_all(dir);
    }

    SECTION("power sweep with traces")
    {
        const fs::path dir = fresh_dir("cli_sweep");
        std::string out;
        REQUIRE(run_cli({"--grid", "256", "--mode", "ul-mmse", "--seed-list", "1", "--sweep", "power:-10,0,10",
                         "--trace", "--out", dir.string()},
                        &out) == 0);
        CHECK(count_lines(dir / "aggregate.csv") == 4);
        CHECK(fs::exists(dir / "traces" / "ul-mmse_power=-10_1.csv"));
        CHECK(count_lines(dir / "traces" / "ul-mmse_power=10_1.csv") >= 2);
        fs::remove_all(dir);
    }

    SECTION("missing config leaves no output")
    {
        const fs::path dir = fresh_dir("cli_missing");
        std::string err;
        CHECK(run_cli({"--config", "/nonexistent/mimo.cfg", "--out", dir.string()}, nullptr, &err) != 0);
        CHECK_FALSE(fs::exists(dir));
        CHECK(err.find("cannot read config") != std::string::npos);
    }

    SECTION("bad flags and invariants")
    {
        const fs::path dir = fresh_dir("cli_bad");
        CHECK(run_cli({"--frobnicate", "--out", dir.string()}) != 0);
        CHECK(run_cli({"--mode", "dl-nothing", "--out", dir.string()}) != 0);
        CHECK(run_cli({"--sweep", "K:0", "--out", dir.string()}) != 0);
        CHECK(run_cli({"--grid", "1", "--out", dir.string()}) != 0);
        CHECK_FALSE(fs::exists(dir));
    }

    SECTION("config file is applied")
    {
        const fs::path dir = fresh_dir("cli_cfg");
        fs::create_directories(dir);
        {
            std::ofstream cfg(dir / "run.cfg");
            cfg << "grid_L = 128\nmode = dl-baseline-mimo\nseeds = 2\n";
        }
        std::string out;
        REQUIRE(run_cli({"--config", (dir / "run.cfg").string(), "--out", (dir / "res").string()}, &out) == 0);
        CHECK(out.find("dl-baseline-mimo: 2 seeds") != std::string::npos);
        CHECK(count_lines(dir / "res" / "runs.csv") == 3);
        fs::remove_all(dir);
    }
}
