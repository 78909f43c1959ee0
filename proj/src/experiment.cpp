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

#include "mimo_pass/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "mimo_pass/baselines.hpp"
#include "mimo_pass/downlink_fp.hpp"
#include "mimo_pass/downlink_zf.hpp"
#include "mimo_pass/errors.hpp"
#include "mimo_pass/grid.hpp"
#include "mimo_pass/uplink.hpp"

namespace mimo_pass
{
    namespace
    {
        struct ModeName
        {
            Mode mode;
            const char *name;
        };

        constexpr ModeName mode_names[] = {
            {Mode::dl_fp, "dl-fp"},
            {Mode::dl_zf, "dl-zf"},
            {Mode::ul_mmse, "ul-mmse"},
            {Mode::dl_baseline_mimo, "dl-baseline-mimo"},
            {Mode::dl_baseline_mmimo, "dl-baseline-mmimo"},
            {Mode::ul_baseline_mimo, "ul-baseline-mimo"},
            {Mode::ul_baseline_mmimo, "ul-baseline-mmimo"},
            {Mode::dl_baseline_hmimo, "dl-baseline-hmimo"},
            {Mode::ul_baseline_hmimo, "ul-baseline-hmimo"},
        };

        struct AxisName
        {
            SweepAxis axis;
            const char *name;
        };

        constexpr AxisName axis_names[] = {
            {SweepAxis::power, "power"},
            {SweepAxis::D_x, "D_x"},
            {SweepAxis::N, "N"},
            {SweepAxis::K, "K"},
            {SweepAxis::grid_L, "grid_L"},
        };

        std::size_t as_count(double v, const char *what)
        {
            if (!(v >= 1.0) || v != std::floor(v) || v > 1e12)
                throw ConfigError(std::string(what) + " sweep values must be positive integers");
            return static_cast<std::size_t>(v);
        }

        void draw_users(const ScenarioConfig &cfg, Rng &rng, UserLayout &users)
        {
            users.positions.resize(cfg.K);
            for (auto &p : users.positions)
            {
                p.x = rng.uniform(0.0, cfg.D_x);
                p.y = rng.uniform(0.0, cfg.D_y);
                p.z = 0.0;
            }
        }

        std::string csv_safe(std::string s)
        {
            for (char &c : s)
                if (c == ',' || c == '\n' || c == '\r' || c == '|')
                    c = ' ';
            return s;
        }

        double to_bits(double nats) { return nats / std::numbers::ln2; }

        void add_grid_flags(RunRecord &r, std::size_t empty_events, bool capped)
        {
            if (empty_events > 0)
                r.flags.push_back("empty_grid:" + std::to_string(empty_events));
            if (capped)
                r.flags.push_back("iteration_cap");
        }

        void execute(const ScenarioConfig &cfg, RunRecord &r, bool keep_trace)
        {
            if (r.mode == Mode::dl_baseline_hmimo || r.mode == Mode::ul_baseline_hmimo)
            {
                r.ok = false;
                r.flags.push_back("unsupported_algorithm");
                return;
            }

            cfg.validate();
            const SeedScenario sc = seed_scenario(cfg, r.seed);

            switch (r.mode)
            {
            case Mode::dl_zf:
            {
                const PiTable table(cfg, sc.users);
                ZfResult zf = run_zf(cfg, sc.users, sc.L0, &table);
                const ChannelMatrix G = channel_matrix(cfg, sc.users, zf.L);
                r.sum_rate_nats = weighted_sum_rate_dl(G, scale_to_power(zf.W, cfg.P_dl()), cfg.sigma2_dl(),
                                                       cfg.weights_dl_vec());
                r.iters = zf.trace.iterations();
                add_grid_flags(r, zf.empty_grid_events, zf.hit_iteration_cap);
                if (keep_trace)
                    r.trace = std::move(zf.trace);
                break;
            }
            case Mode::dl_fp:
            {
                const PiTable table(cfg, sc.users);
                ZfResult zf = run_zf(cfg, sc.users, sc.L0, &table);
                FpBcdResult fp = run_fp_bcd(cfg, sc.users, zf.W, zf.L, &table);
                double best = fp.trace.points.front().objective;
                for (const auto &p : fp.trace.points)
                    best = std::max(best, p.objective);
                r.sum_rate_nats = best;
                r.warm_start_bits = to_bits(fp.trace.points.front().objective);
                r.iters = fp.trace.iterations();
                add_grid_flags(r, zf.empty_grid_events + fp.empty_grid_events,
                               zf.hit_iteration_cap || fp.hit_iteration_cap);
                if (keep_trace)
                    r.trace = std::move(fp.trace);
                break;
            }
            case Mode::ul_mmse:
            {
                const PiTable table(cfg, sc.users);
                UplinkResult ul = run_greedy_uplink(cfg, sc.users, sc.L0, &table);
                r.sum_rate_nats = ul.sum_rate_nats;
                r.iters = ul.trace.iterations();
                add_grid_flags(r, ul.empty_grid_events, ul.hit_iteration_cap);
                if (keep_trace)
                    r.trace = std::move(ul.trace);
                break;
            }
            case Mode::dl_baseline_mimo:
            case Mode::dl_baseline_mmimo:
            {
                const std::size_t A = r.mode == Mode::dl_baseline_mimo ? cfg.M : cfg.M * cfg.N;
                BaselineDlResult b = run_baseline_dl(cfg, sc.users, A);
                r.sum_rate_nats = b.sum_rate_nats;
                r.iters = b.trace.iterations();
                if (keep_trace)
                    r.trace = std::move(b.trace);
                break;
            }
            case Mode::ul_baseline_mimo:
            case Mode::ul_baseline_mmimo:
            {
                const std::size_t A = r.mode == Mode::ul_baseline_mimo ? cfg.M : cfg.M * cfg.N;
                r.sum_rate_nats = run_baseline_ul(cfg, sc.users, A).sum_rate_nats;
                r.iters = 0;
                break;
            }
            default:
                break;
            }
            r.sum_rate_bits = to_bits(r.sum_rate_nats);
            if (!std::isfinite(r.sum_rate_nats) || r.sum_rate_nats < 0.0)
            {
                r.ok = false;
                r.flags.push_back("invalid_sum_rate");
            }
        }
    }

    std::string to_string(Mode mode)
    {
        for (const auto &m : mode_names)
            if (m.mode == mode)
                return m.name;
        return "unknown";
    }

    Mode parse_mode(const std::string &name)
    {
        for (const auto &m : mode_names)
            if (name == m.name)
                return m.mode;
        throw ConfigError("unknown mode '" + name + "'");
    }

    bool is_downlink(Mode mode)
    {
        switch (mode)
        {
        case Mode::dl_fp:
        case Mode::dl_zf:
        case Mode::dl_baseline_mimo:
        case Mode::dl_baseline_mmimo:
        case Mode::dl_baseline_hmimo:
            return true;
        default:
            return false;
        }
    }

    std::string to_string(SweepAxis axis)
    {
        for (const auto &a : axis_names)
            if (a.axis == axis)
                return a.name;
        return "unknown";
    }

    SweepAxis parse_sweep_axis(const std::string &name)
    {
        for (const auto &a : axis_names)
            if (name == a.name)
                return a.axis;
        throw ConfigError("unknown sweep axis '" + name + "' (expected power, D_x, N, K or grid_L)");
    }

    Sweep parse_sweep(const std::string &text)
    {
        const auto colon = text.find(':');
        if (colon == std::string::npos)
            throw ConfigError("sweep must look like AXIS:v1,v2,...");
        Sweep sweep;
        sweep.axis = parse_sweep_axis(text.substr(0, colon));
        std::stringstream ss(text.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ','))
        {
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(item, &used);
            }
            catch (const std::exception &)
            {
                throw ConfigError("bad sweep value '" + item + "'");
            }
            if (used != item.size() || !std::isfinite(v))
                throw ConfigError("bad sweep value '" + item + "'");
            sweep.values.push_back(v);
        }
        if (sweep.values.empty())
            throw ConfigError("sweep needs at least one value");
        return sweep;
    }

    ScenarioConfig apply_sweep(const ScenarioConfig &base, Mode mode, SweepAxis axis, double value)
    {
        ScenarioConfig cfg = base;
        switch (axis)
        {
        case SweepAxis::power:
            (is_downlink(mode) ? cfg.P_dl_dbm : cfg.P_ul_dbm) = value;
            break;
        case SweepAxis::D_x:
            cfg.D_x = value;
            break;
        case SweepAxis::N:
            cfg.N = as_count(value, "N");
            break;
        case SweepAxis::K:
            cfg.K = as_count(value, "K");
            break;
        case SweepAxis::grid_L:
            cfg.grid_L = as_count(value, "grid_L");
            break;
        }
        return cfg;
    }

    void ExperimentSpec::validate() const
    {
        if (seeds.empty())
            throw ConfigError("seed list must not be empty");
        if (!sweep)
        {
            scenario.validate();
            return;
        }
        for (double v : sweep->values)
            apply_sweep(scenario, mode, sweep->axis, v).validate();
    }

    UserLayout sample_users(const ScenarioConfig &cfg, std::uint64_t seed)
    {
        Rng rng(seed);
        UserLayout users;
        draw_users(cfg, rng, users);
        return users;
    }

    SeedScenario seed_scenario(const ScenarioConfig &cfg, std::uint64_t seed)
    {
        Rng rng(seed);
        SeedScenario sc;
        draw_users(cfg, rng, sc.users);
        sc.L0 = random_feasible_layout(cfg, rng);
        return sc;
    }

    RunRecord run_single(const ScenarioConfig &cfg, Mode mode, std::uint64_t seed, bool keep_trace)
    {
        RunRecord r;
        r.mode = mode;
        r.seed = seed;
        const auto start = std::chrono::steady_clock::now();
        try
        {
            execute(cfg, r, keep_trace);
        }
        catch (const std::exception &e)
        {
            r.ok = false;
            r.sum_rate_nats = 0.0;
            r.sum_rate_bits = 0.0;
            r.flags.push_back("error:" + csv_safe(e.what()));
        }
        r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return r;
    }

    std::vector<RunRecord> run_experiment(const ExperimentSpec &spec)
    {
        spec.validate();

        struct Job
        {
            ScenarioConfig cfg;
            std::optional<SweepAxis> axis;
            double value;
            std::uint64_t seed;
        };
        std::vector<Job> jobs;
        if (spec.sweep)
        {
            for (double v : spec.sweep->values)
            {
                const ScenarioConfig cfg = apply_sweep(spec.scenario, spec.mode, spec.sweep->axis, v);
                for (std::uint64_t s : spec.seeds)
                    jobs.push_back({cfg, spec.sweep->axis, v, s});
            }
        }
        else
        {
            for (std::uint64_t s : spec.seeds)
                jobs.push_back({spec.scenario, std::nullopt, 0.0, s});
        }

        std::vector<RunRecord> records(jobs.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&]()
        {
            for (std::size_t i = next++; i < jobs.size(); i = next++)
            {
                records[i] = run_single(jobs[i].cfg, spec.mode, jobs[i].seed, spec.keep_traces);
                records[i].sweep_axis = jobs[i].axis;
                records[i].sweep_value = jobs[i].value;
            }
        };

        std::size_t threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
        threads = std::min(threads, jobs.size());
        if (threads <= 1)
        {
            worker();
        }
        else
        {
            std::vector<std::jthread> pool;
            for (std::size_t t = 0; t < threads; ++t)
                pool.emplace_back(worker);
        }
        return records;
    }

    std::vector<AggregateRow> aggregate(const std::vector<RunRecord> &records)
    {
        std::vector<AggregateRow> rows;
        std::vector<std::vector<double>> samples;
        for (const auto &r : records)
        {
            auto it = std::find_if(rows.begin(), rows.end(), [&](const AggregateRow &row)
                                   { return row.mode == r.mode && row.sweep_axis == r.sweep_axis &&
                                            row.sweep_value == r.sweep_value; });
            std::size_t idx;
            if (it == rows.end())
            {
                rows.push_back({r.mode, r.sweep_axis, r.sweep_value, 0, 0.0, 0.0});
                samples.emplace_back();
                idx = rows.size() - 1;
            }
            else
            {
                idx = static_cast<std::size_t>(it - rows.begin());
            }
            if (r.ok)
                samples[idx].push_back(r.sum_rate_bits);
        }

        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            const auto &s = samples[i];
            rows[i].n_seeds = s.size();
            if (s.empty())
            {
                rows[i].mean_bits = std::nan("");
                rows[i].std_bits = std::nan("");
                continue;
            }
            double sum = 0.0;
            for (double v : s)
                sum += v;
            const double mean = sum / static_cast<double>(s.size());
            double ss = 0.0;
            for (double v : s)
                ss += (v - mean) * (v - mean);
            rows[i].mean_bits = mean;
            rows[i].std_bits = s.size() > 1 ? std::sqrt(ss / static_cast<double>(s.size() - 1)) : 0.0;
        }
        return rows;
    }

    void write_runs_csv(std::ostream &os, const std::vector<RunRecord> &records)
    {
        os << "mode,sweep_axis,sweep_value,seed,sum_rate_bits,sum_rate_nats,iters,wall_ms,warm_start_bits,flags\n";
        os << std::setprecision(17);
        for (const auto &r : records)
        {
            os << to_string(r.mode) << ',';
            if (r.sweep_axis)
                os << to_string(*r.sweep_axis) << ',' << r.sweep_value << ',';
            else
                os << "none,,";
            os << r.seed << ',' << r.sum_rate_bits << ',' << r.sum_rate_nats << ',' << r.iters << ',' << r.wall_ms
               << ',';
            if (r.warm_start_bits)
                os << *r.warm_start_bits;
            os << ',';
            for (std::size_t i = 0; i < r.flags.size(); ++i)
                os << (i ? "|" : "") << r.flags[i];
            os << '\n';
        }
    }

    void write_aggregate_csv(std::ostream &os, const std::vector<AggregateRow> &rows)
    {
        os << "mode,sweep_axis,sweep_value,n_seeds,mean_bits,std_bits\n";
        os << std::setprecision(17);
        for (const auto &row : rows)
        {
            os << to_string(row.mode) << ',';
            if (row.sweep_axis)
                os << to_string(*row.sweep_axis) << ',' << row.sweep_value << ',';
            else
                os << "none,,";
            os << row.n_seeds << ',' << row.mean_bits << ',' << row.std_bits << '\n';
        }
    }

    std::string trace_file_name(const RunRecord &record)
    {
        std::ostringstream name;
        name << to_string(record.mode) << '_';
        if (record.sweep_axis)
            name << to_string(*record.sweep_axis) << '=' << record.sweep_value << '_';
        name << record.seed << ".csv";
        return name.str();
    }
}
