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

#include <complex>
#include <iostream>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mimo_pass/baselines.hpp"
#include "mimo_pass/channel.hpp"
#include "mimo_pass/cli.hpp"
#include "mimo_pass/downlink_fp.hpp"
#include "mimo_pass/downlink_zf.hpp"
#include "mimo_pass/errors.hpp"
#include "mimo_pass/experiment.hpp"
#include "mimo_pass/uplink.hpp"

namespace py = pybind11;
using namespace mimo_pass;

namespace
{
    template <typename T>
    using FArray = py::array_t<T, py::array::f_style | py::array::forcecast>;

    template <typename T>
    py::array_t<T> to_numpy(const arma::Mat<T> &A)
    {
        py::array_t<T, py::array::f_style> out({A.n_rows, A.n_cols});
        std::copy(A.memptr(), A.memptr() + A.n_elem, out.mutable_data());
        return out;
    }

    template <typename T>
    arma::Mat<T> from_numpy(const FArray<T> &a)
    {
        if (a.ndim() != 2)
            throw ConfigError("expected a 2-D array");
        arma::Mat<T> A(a.shape(0), a.shape(1));
        std::copy(a.data(), a.data() + A.n_elem, A.memptr());
        return A;
    }

    py::array_t<double> users_to_numpy(const UserLayout &users)
    {
        py::array_t<double> out({users.size(), std::size_t{3}});
        auto v = out.mutable_unchecked<2>();
        for (std::size_t k = 0; k < users.size(); ++k)
        {
            v(k, 0) = users[k].x;
            v(k, 1) = users[k].y;
            v(k, 2) = users[k].z;
        }
        return out;
    }

    /// Accepts K x 2 (z = 0) or K x 3 positions.
    UserLayout users_from_numpy(const py::array_t<double, py::array::c_style | py::array::forcecast> &a)
    {
        if (a.ndim() != 2 || (a.shape(1) != 2 && a.shape(1) != 3))
            throw ConfigError("user positions must be a K x 2 or K x 3 array");
        auto v = a.unchecked<2>();
        UserLayout users;
        users.positions.resize(a.shape(0));
        for (py::ssize_t k = 0; k < a.shape(0); ++k)
        {
            users.positions[k].x = v(k, 0);
            users.positions[k].y = v(k, 1);
            users.positions[k].z = a.shape(1) == 3 ? v(k, 2) : 0.0;
        }
        return users;
    }

    py::dict trace_to_dict(const ConvergenceTrace &t)
    {
        std::vector<double> objective, rate, wall;
        for (const auto &p : t.points)
        {
            objective.push_back(p.objective);
            rate.push_back(p.sum_rate_nats);
            wall.push_back(p.wall_ms);
        }
        py::dict d;
        d["objective"] = objective;
        d["sum_rate_nats"] = rate;
        d["wall_ms"] = wall;
        return d;
    }
}

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Hybrid beamforming and multiuser detection for pinching-antenna MIMO systems";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<FeasibilityError>(m, "FeasibilityError", base.ptr());
    py::register_exception<DegenerateError>(m, "DegenerateError", base.ptr());
    py::register_exception<SingularSystemError>(m, "SingularSystemError", base.ptr());
    py::register_exception<RankDeficiencyError>(m, "RankDeficiencyError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("M", &ScenarioConfig::M)
        .def_readwrite("N", &ScenarioConfig::N)
        .def_readwrite("K", &ScenarioConfig::K)
        .def_readwrite("f", &ScenarioConfig::f)
        .def_readwrite("i_ref", &ScenarioConfig::i_ref)
        .def_readwrite("a", &ScenarioConfig::a)
        .def_readwrite("D_x", &ScenarioConfig::D_x)
        .def_readwrite("D_y", &ScenarioConfig::D_y)
        .def_readwrite("sigma2_dl_dbm", &ScenarioConfig::sigma2_dl_dbm)
        .def_readwrite("sigma2_ul_dbm", &ScenarioConfig::sigma2_ul_dbm)
        .def_readwrite("P_dl_dbm", &ScenarioConfig::P_dl_dbm)
        .def_readwrite("P_ul_dbm", &ScenarioConfig::P_ul_dbm)
        .def_readwrite("weights_dl", &ScenarioConfig::weights_dl)
        .def_readwrite("weights_ul", &ScenarioConfig::weights_ul)
        .def_readwrite("alpha", &ScenarioConfig::alpha)
        .def_readwrite("grid_L", &ScenarioConfig::grid_L)
        .def_readwrite("epsilon", &ScenarioConfig::epsilon)
        .def_readwrite("max_iters", &ScenarioConfig::max_iters)
        .def_readwrite("spacing_override", &ScenarioConfig::spacing_override)
        .def_readwrite("length_override", &ScenarioConfig::length_override)
        .def_readwrite("min_gap_override", &ScenarioConfig::min_gap_override)
        .def_property_readonly("wavelength", &ScenarioConfig::wavelength)
        .def_property_readonly("spacing", &ScenarioConfig::spacing)
        .def_property_readonly("waveguide_length", &ScenarioConfig::waveguide_length)
        .def_property_readonly("min_gap", &ScenarioConfig::min_gap)
        .def("validate", &ScenarioConfig::validate);

    m.def("sample_users", [](const ScenarioConfig &cfg, std::uint64_t seed)
          { return users_to_numpy(sample_users(cfg, seed)); },
          py::arg("config"), py::arg("seed"), "K x 3 array of user positions drawn from the seed.");

    m.def("seed_scenario", [](const ScenarioConfig &cfg, std::uint64_t seed)
          {
              const SeedScenario sc = seed_scenario(cfg, seed);
              return py::make_tuple(users_to_numpy(sc.users), to_numpy<double>(sc.L0));
          },
          py::arg("config"), py::arg("seed"), "(users, initial N x M layout) shared by every mode.");

    m.def("channel_matrix", [](const ScenarioConfig &cfg, const py::array_t<double> &users, const FArray<double> &L)
          { return to_numpy<cx>(channel_matrix(cfg, users_from_numpy(users), from_numpy<double>(L))); },
          py::arg("config"), py::arg("users"), py::arg("L"));

    m.def("is_feasible", [](const ScenarioConfig &cfg, const FArray<double> &L)
          { return is_feasible(cfg, from_numpy<double>(L)); },
          py::arg("config"), py::arg("L"));

    m.def("weighted_sum_rate_dl",
          [](const FArray<cx> &G, const FArray<cx> &W, double sigma2, const std::vector<double> &weights)
          { return weighted_sum_rate_dl(from_numpy<cx>(G), from_numpy<cx>(W), sigma2, weights); },
          py::arg("G"), py::arg("W"), py::arg("sigma2"), py::arg("weights"));

    m.def("zf_precoder", [](const FArray<cx> &G, double P) { return to_numpy<cx>(zf_precoder(from_numpy<cx>(G), P)); },
          py::arg("G"), py::arg("P"));

    m.def("mmse_detector", [](const FArray<cx> &G, double P, double sigma2)
          { return to_numpy<cx>(mmse_detector(from_numpy<cx>(G), P, sigma2)); },
          py::arg("G"), py::arg("P"), py::arg("sigma2"));

    m.def("run_zf", [](const ScenarioConfig &cfg, const py::array_t<double> &users, const FArray<double> &L0)
          {
              ZfResult r;
              {
                  py::gil_scoped_release release;
                  r = run_zf(cfg, users_from_numpy(users), from_numpy<double>(L0));
              }
              py::dict d;
              d["W"] = to_numpy<cx>(r.W);
              d["L"] = to_numpy<double>(r.L);
              d["sum_rate_nats"] = r.sum_rate_nats;
              d["trace"] = trace_to_dict(r.trace);
              return d;
          },
          py::arg("config"), py::arg("users"), py::arg("L0"));

    m.def("run_fp_bcd",
          [](const ScenarioConfig &cfg, const py::array_t<double> &users, const FArray<cx> &W0, const FArray<double> &L0)
          {
              const UserLayout u = users_from_numpy(users);
              const PrecoderMatrix W = from_numpy<cx>(W0);
              const LocationMatrix L = from_numpy<double>(L0);
              FpBcdResult r;
              {
                  py::gil_scoped_release release;
                  r = run_fp_bcd(cfg, u, W, L);
              }
              py::dict d;
              d["W"] = to_numpy<cx>(r.W);
              d["L"] = to_numpy<double>(r.L);
              d["sum_rate_nats"] = weighted_sum_rate_dl(channel_matrix(cfg, u, r.L), r.W, cfg.sigma2_dl(),
                                                        cfg.weights_dl_vec());
              d["trace"] = trace_to_dict(r.trace);
              return d;
          },
          py::arg("config"), py::arg("users"), py::arg("W0"), py::arg("L0"));

    m.def("run_greedy_uplink", [](const ScenarioConfig &cfg, const py::array_t<double> &users, const FArray<double> &L0)
          {
              UplinkResult r;
              {
                  py::gil_scoped_release release;
                  r = run_greedy_uplink(cfg, users_from_numpy(users), from_numpy<double>(L0));
              }
              py::dict d;
              d["M"] = to_numpy<cx>(r.Mrx);
              d["L"] = to_numpy<double>(r.L);
              d["sum_rate_nats"] = r.sum_rate_nats;
              d["trace"] = trace_to_dict(r.trace);
              return d;
          },
          py::arg("config"), py::arg("users"), py::arg("L0"));

    m.def("run_baseline_dl", [](const ScenarioConfig &cfg, const py::array_t<double> &users, std::size_t antennas)
          {
              const BaselineDlResult r = run_baseline_dl(cfg, users_from_numpy(users), antennas);
              return py::make_tuple(to_numpy<cx>(r.W), r.sum_rate_nats);
          },
          py::arg("config"), py::arg("users"), py::arg("antenna_count"));

    m.def("run_baseline_ul", [](const ScenarioConfig &cfg, const py::array_t<double> &users, std::size_t antennas)
          {
              const BaselineUlResult r = run_baseline_ul(cfg, users_from_numpy(users), antennas);
              return py::make_tuple(to_numpy<cx>(r.Mrx), r.sum_rate_nats);
          },
          py::arg("config"), py::arg("users"), py::arg("antenna_count"));

    m.def("run_single", [](const ScenarioConfig &cfg, const std::string &mode, std::uint64_t seed)
          {
              const Mode md = parse_mode(mode);
              RunRecord r;
              {
                  py::gil_scoped_release release;
                  r = run_single(cfg, md, seed, true);
              }
              py::dict d;
              d["mode"] = to_string(r.mode);
              d["seed"] = r.seed;
              d["sum_rate_nats"] = r.sum_rate_nats;
              d["sum_rate_bits"] = r.sum_rate_bits;
              d["iters"] = r.iters;
              d["wall_ms"] = r.wall_ms;
              d["warm_start_bits"] = r.warm_start_bits;
              d["flags"] = r.flags;
              d["ok"] = r.ok;
              if (r.trace)
                  d["trace"] = trace_to_dict(*r.trace);
              return d;
          },
          py::arg("config"), py::arg("mode"), py::arg("seed"),
          "One harness run; failures come back in 'flags' with ok=False.");

    m.def("cli_main", [](std::vector<std::string> args)
          {
              args.insert(args.begin(), "mimo_pass_cli");
              std::vector<const char *> argv;
              for (const auto &a : args)
                  argv.push_back(a.c_str());
              return cli_main(static_cast<int>(argv.size()), argv.data(), std::cout, std::cerr);
          },
          py::arg("args"), "Runs the command line tool in-process and returns its exit status.");
}
