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

#include "mimo_pass/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "mimo_pass/config_file.hpp"
#include "mimo_pass/errors.hpp"
#include "mimo_pass/experiment.hpp"

namespace mimo_pass
{
    namespace
    {
        bool has_error_flag(const RunRecord &r)
        {
            for (const auto &f : r.flags)
                if (f.rfind("error:", 0) == 0)
                    return true;
            return false;
        }

        void open_or_throw(std::ofstream &os, const std::filesystem::path &p)
        {
            os.open(p);
            if (!os)
                throw ConfigError("cannot write " + p.string());
        }
    }

    int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Hybrid beamforming and multiuser detection for pinching-antenna MIMO systems"};
        app.name("mimo_pass_cli");

        std::string preset_name = "full";
        std::string config_path;
        std::string mode_name;
        std::optional<std::size_t> n_seeds;
        std::vector<std::uint64_t> seed_list;
        std::string sweep_text;
        std::optional<std::size_t> grid;
        std::string out_dir = "results";
        bool trace = false;
        std::size_t threads = 0;

        app.add_option("--preset", preset_name, "Base parameter set: full or desk")->capture_default_str();
        app.add_option("--config", config_path, "key=value config file applied on top of the preset");
        app.add_option("--mode", mode_name,
                       "dl-fp, dl-zf, ul-mmse, dl-baseline-mimo, dl-baseline-mmimo, ul-baseline-mimo, "
                       "ul-baseline-mmimo");
        auto *seeds_opt = app.add_option("--seeds", n_seeds, "Run seeds 0..N-1");
        app.add_option("--seed-list", seed_list, "Explicit comma separated seeds")
            ->delimiter(',')
            ->excludes(seeds_opt);
        app.add_option("--sweep", sweep_text, "Sweep one axis, e.g. power:-10,0,10");
        app.add_option("--grid", grid, "Grid points per waveguide");
        app.add_option("--out", out_dir, "Output directory")->capture_default_str();
        app.add_flag("--trace", trace, "Write per-iteration convergence traces");
        app.add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            return app.exit(e, out, err);
        }

        ExperimentSpec spec;
        try
        {
            spec = preset(preset_name);
            if (!config_path.empty())
                apply_config_file(spec, config_path);
            if (!mode_name.empty())
                spec.mode = parse_mode(mode_name);
            if (n_seeds)
            {
                spec.seeds.resize(*n_seeds);
                std::iota(spec.seeds.begin(), spec.seeds.end(), std::uint64_t{0});
            }
            if (!seed_list.empty())
                spec.seeds = seed_list;
            if (!sweep_text.empty())
                spec.sweep = parse_sweep(sweep_text);
            if (grid)
                spec.scenario.grid_L = *grid;
            spec.keep_traces = trace;
            spec.threads = threads;
            spec.validate();
        }
        catch (const Error &e)
        {
            err << "error: " << e.what() << '\n';
            return 2;
        }

        const std::vector<RunRecord> records = run_experiment(spec);
        const std::vector<AggregateRow> rows = aggregate(records);

        try
        {
            const std::filesystem::path dir(out_dir);
            std::filesystem::create_directories(dir);
            std::ofstream runs, agg;
            open_or_throw(runs, dir / "runs.csv");
            write_runs_csv(runs, records);
            open_or_throw(agg, dir / "aggregate.csv");
            write_aggregate_csv(agg, rows);
            if (trace)
            {
                std::filesystem::create_directories(dir / "traces");
                for (const auto &r : records)
                {
                    if (!r.trace)
                        continue;
                    std::ofstream t;
                    open_or_throw(t, dir / "traces" / trace_file_name(r));
                    r.trace->write_csv(t);
                }
            }
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return 2;
        }

        for (const auto &row : rows)
        {
            std::ostringstream line;
            line << to_string(row.mode);
            if (row.sweep_axis)
                line << ' ' << to_string(*row.sweep_axis) << '=' << row.sweep_value;
            line << ": " << row.n_seeds << " seeds, mean " << std::fixed << std::setprecision(4) << row.mean_bits
                 << " bit/s/Hz, std " << row.std_bits;
            out << line.str() << '\n';
        }

        std::size_t failed = 0;
        for (const auto &r : records)
        {
            if (has_error_flag(r))
            {
                ++failed;
                err << "run " << to_string(r.mode) << " seed " << r.seed << " failed:";
                for (const auto &f : r.flags)
                    err << ' ' << f;
                err << '\n';
            }
        }
        return failed ? 3 : 0;
    }
}
