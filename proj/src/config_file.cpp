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

#include "mimo_pass/config_file.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "mimo_pass/errors.hpp"

namespace mimo_pass
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        double to_double(const std::string &v)
        {
            std::size_t used = 0;
            double x = std::stod(v, &used);
            if (used != v.size() || !std::isfinite(x))
                throw std::invalid_argument(v);
            return x;
        }

        std::uint64_t to_uint(const std::string &v)
        {
            if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
                throw std::invalid_argument(v);
            return std::stoull(v);
        }

        std::vector<double> to_list(const std::string &v)
        {
            std::vector<double> out;
            std::stringstream ss(v);
            std::string item;
            while (std::getline(ss, item, ','))
                out.push_back(to_double(trim(item)));
            return out;
        }

        using Setter = std::function<void(ExperimentSpec &, const std::string &)>;

        const std::map<std::string, Setter> &setters()
        {
            static const std::map<std::string, Setter> table = {
                {"M", [](ExperimentSpec &s, const std::string &v) { s.scenario.M = to_uint(v); }},
                {"N", [](ExperimentSpec &s, const std::string &v) { s.scenario.N = to_uint(v); }},
                {"K", [](ExperimentSpec &s, const std::string &v) { s.scenario.K = to_uint(v); }},
                {"f", [](ExperimentSpec &s, const std::string &v) { s.scenario.f = to_double(v); }},
                {"i_ref", [](ExperimentSpec &s, const std::string &v) { s.scenario.i_ref = to_double(v); }},
                {"a", [](ExperimentSpec &s, const std::string &v) { s.scenario.a = to_double(v); }},
                {"D_x", [](ExperimentSpec &s, const std::string &v) { s.scenario.D_x = to_double(v); }},
                {"D_y", [](ExperimentSpec &s, const std::string &v) { s.scenario.D_y = to_double(v); }},
                {"sigma2_dl_dbm", [](ExperimentSpec &s, const std::string &v) { s.scenario.sigma2_dl_dbm = to_double(v); }},
                {"sigma2_ul_dbm", [](ExperimentSpec &s, const std::string &v) { s.scenario.sigma2_ul_dbm = to_double(v); }},
                {"P_dl_dbm", [](ExperimentSpec &s, const std::string &v) { s.scenario.P_dl_dbm = to_double(v); }},
                {"P_ul_dbm", [](ExperimentSpec &s, const std::string &v) { s.scenario.P_ul_dbm = to_double(v); }},
                {"weights_dl", [](ExperimentSpec &s, const std::string &v) { s.scenario.weights_dl = to_list(v); }},
                {"weights_ul", [](ExperimentSpec &s, const std::string &v) { s.scenario.weights_ul = to_list(v); }},
                {"alpha", [](ExperimentSpec &s, const std::string &v) { s.scenario.alpha = to_list(v); }},
                {"grid_L", [](ExperimentSpec &s, const std::string &v) { s.scenario.grid_L = to_uint(v); }},
                {"epsilon", [](ExperimentSpec &s, const std::string &v) { s.scenario.epsilon = to_double(v); }},
                {"max_iters", [](ExperimentSpec &s, const std::string &v) { s.scenario.max_iters = to_uint(v); }},
                {"d", [](ExperimentSpec &s, const std::string &v) { s.scenario.spacing_override = to_double(v); }},
                {"L_m", [](ExperimentSpec &s, const std::string &v) { s.scenario.length_override = to_double(v); }},
                {"delta_ell", [](ExperimentSpec &s, const std::string &v) { s.scenario.min_gap_override = to_double(v); }},
                {"mode", [](ExperimentSpec &s, const std::string &v) { s.mode = parse_mode(v); }},
                {"seeds", [](ExperimentSpec &s, const std::string &v)
                 {
                     s.seeds.resize(to_uint(v));
                     std::iota(s.seeds.begin(), s.seeds.end(), std::uint64_t{0});
                 }},
                {"seed_list", [](ExperimentSpec &s, const std::string &v)
                 {
                     s.seeds.clear();
                     std::stringstream ss(v);
                     std::string item;
                     while (std::getline(ss, item, ','))
                         s.seeds.push_back(to_uint(trim(item)));
                 }},
                {"sweep", [](ExperimentSpec &s, const std::string &v) { s.sweep = parse_sweep(v); }},
            };
            return table;
        }
    }

    ExperimentSpec preset(const std::string &name)
    {
        ExperimentSpec spec;
        std::size_t n_seeds = 0;
        if (name == "full")
        {
            spec.scenario.grid_L = 100000;
            n_seeds = 500;
        }
        else if (name == "desk")
        {
            spec.scenario.grid_L = 4096;
            n_seeds = 20;
        }
        else
        {
            throw ConfigError("unknown preset '" + name + "' (expected full or desk)");
        }
        spec.seeds.resize(n_seeds);
        std::iota(spec.seeds.begin(), spec.seeds.end(), std::uint64_t{0});
        return spec;
    }

    void apply_config(ExperimentSpec &spec, std::istream &in)
    {
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            const std::string body = trim(line);
            if (body.empty() || body.front() == '#')
                continue;
            const auto eq = body.find('=');
            const std::string where = "config line " + std::to_string(lineno);
            if (eq == std::string::npos)
                throw ConfigError(where + ": expected key=value");
            const std::string key = trim(body.substr(0, eq));
            const std::string value = trim(body.substr(eq + 1));
            const auto it = setters().find(key);
            if (it == setters().end())
                throw ConfigError(where + ": unknown key '" + key + "'");
            try
            {
                it->second(spec, value);
            }
            catch (const ConfigError &e)
            {
                throw ConfigError(where + ": " + e.what());
            }
            catch (const std::exception &)
            {
                throw ConfigError(where + ": bad value '" + value + "' for " + key);
            }
        }
    }

    void apply_config_file(ExperimentSpec &spec, const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot read config file '" + path + "'");
        apply_config(spec, in);
    }
}
