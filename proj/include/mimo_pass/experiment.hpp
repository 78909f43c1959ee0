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
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mimo_pass/channel.hpp"
#include "mimo_pass/scenario.hpp"
#include "mimo_pass/trace.hpp"

namespace mimo_pass
{
    enum class Mode
    {
        dl_fp,
        dl_zf,
        ul_mmse,
        dl_baseline_mimo,
        dl_baseline_mmimo,
        ul_baseline_mimo,
        ul_baseline_mmimo,
        dl_baseline_hmimo,   // recognized, reported as unsupported
        ul_baseline_hmimo
    };

    std::string to_string(Mode mode);
    Mode parse_mode(const std::string &name);   // throws ConfigError
    bool is_downlink(Mode mode);

    enum class SweepAxis
    {
        power,   // P_dl_dbm for downlink modes, P_ul_dbm for uplink modes
        D_x,
        N,
        K,
        grid_L
    };

    std::string to_string(SweepAxis axis);
    SweepAxis parse_sweep_axis(const std::string &name);

    struct Sweep
    {
        SweepAxis axis = SweepAxis::power;
        std::vector<double> values;
    };

    /// Parses "AXIS:v1,v2,...".
    Sweep parse_sweep(const std::string &text);

    struct ExperimentSpec
    {
        ScenarioConfig scenario;
        Mode mode = Mode::dl_fp;
        std::vector<std::uint64_t> seeds;
        std::optional<Sweep> sweep;
        bool keep_traces = false;
        std::size_t threads = 0;   // 0 = hardware concurrency

        /// Checks the seed list and every sweep point against the scenario invariants.
        void validate() const;
    };

    /// The scenario with one sweep value applied.
    ScenarioConfig apply_sweep(const ScenarioConfig &base, Mode mode, SweepAxis axis, double value);

    struct RunRecord
    {
        Mode mode = Mode::dl_fp;
        std::optional<SweepAxis> sweep_axis;
        double sweep_value = 0.0;
        std::uint64_t seed = 0;
        double sum_rate_nats = 0.0;
        double sum_rate_bits = 0.0;
        std::size_t iters = 0;
        double wall_ms = 0.0;
        std::optional<double> warm_start_bits;  // dl-fp only: rate of its ZF starting point
        std::vector<std::string> flags;
        bool ok = true;                          // false when the run failed or is unsupported
        std::optional<ConvergenceTrace> trace;
    };

    struct AggregateRow
    {
        Mode mode = Mode::dl_fp;
        std::optional<SweepAxis> sweep_axis;
        double sweep_value = 0.0;
        std::size_t n_seeds = 0;
        double mean_bits = 0.0;
        double std_bits = 0.0;   // sample standard deviation, 0 for a single seed
    };

    /// K users i.i.d. uniform on [0, D_x] x [0, D_y] x {0}, drawn as (x_1, y_1, x_2, ...)
    /// from Rng(seed).
    UserLayout sample_users(const ScenarioConfig &cfg, std::uint64_t seed);

    /// Users followed by a random feasible initial layout, both from the stream of Rng(seed).
    /// Every mode sees the same users and starting layout for a given seed.
    struct SeedScenario
    {
        UserLayout users;
        LocationMatrix L0;
    };

    SeedScenario seed_scenario(const ScenarioConfig &cfg, std::uint64_t seed);

    /// One (scenario, mode, seed) run. Failures are reported through flags, not thrown.
    RunRecord run_single(const ScenarioConfig &cfg, Mode mode, std::uint64_t seed, bool keep_trace = false);

    /// Every (sweep value, seed) pair, ordered by sweep value then seed.
    std::vector<RunRecord> run_experiment(const ExperimentSpec &spec);

    /// Per sweep value mean and sample std of sum_rate_bits over successful records.
    std::vector<AggregateRow> aggregate(const std::vector<RunRecord> &records);

    void write_runs_csv(std::ostream &os, const std::vector<RunRecord> &records);
    void write_aggregate_csv(std::ostream &os, const std::vector<AggregateRow> &rows);

    /// File name of a record's trace inside traces/: <mode>_<seed>.csv, with the sweep
    /// point inserted as <mode>_<axis>=<value>_<seed>.csv when sweeping.
    std::string trace_file_name(const RunRecord &record);
}
