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

#include "mimo_pass/scenario.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mimo_pass/errors.hpp"

namespace mimo_pass
{
    double dbm_to_watt(double dbm)
    {
        return std::pow(10.0, (dbm - 30.0) / 10.0);
    }

    double ScenarioConfig::kappa() const
    {
        return 2.0 * std::numbers::pi / wavelength();
    }

    double ScenarioConfig::xi() const
    {
        return wavelength() / (4.0 * std::numbers::pi);
    }

    double ScenarioConfig::spacing() const
    {
        if (spacing_override)
            return *spacing_override;
        return M > 1 ? D_y / static_cast<double>(M - 1) : 0.0;
    }

    double ScenarioConfig::waveguide_length() const
    {
        return length_override ? *length_override : D_x;
    }

    double ScenarioConfig::min_gap() const
    {
        return min_gap_override ? *min_gap_override : 0.5 * wavelength();
    }

    double ScenarioConfig::weight_dl(std::size_t k) const
    {
        return weights_dl.empty() ? 1.0 / static_cast<double>(K) : weights_dl[k];
    }

    double ScenarioConfig::weight_ul(std::size_t k) const
    {
        return weights_ul.empty() ? 1.0 / static_cast<double>(K) : weights_ul[k];
    }

    double ScenarioConfig::shadowing(std::size_t k) const
    {
        return alpha.empty() ? 1.0 : alpha[k];
    }

    std::vector<double> ScenarioConfig::weights_dl_vec() const
    {
        std::vector<double> w(K);
        for (std::size_t k = 0; k < K; ++k)
            w[k] = weight_dl(k);
        return w;
    }

    std::vector<double> ScenarioConfig::weights_ul_vec() const
    {
        std::vector<double> w(K);
        for (std::size_t k = 0; k < K; ++k)
            w[k] = weight_ul(k);
        return w;
    }

    void ScenarioConfig::validate() const
    {
        auto require = [](bool ok, const std::string &msg)
        {
            if (!ok)
                throw ConfigError(msg);
        };
        auto positive = [&](double v, const char *name)
        { require(std::isfinite(v) && v > 0.0, std::string(name) + " must be finite and positive"); };

        require(M >= 1, "M must be at least 1");
        require(N >= 1, "N must be at least 1");
        require(K >= 1, "K must be at least 1");
        positive(f, "f");
        positive(i_ref, "i_ref");
        positive(a, "a");
        positive(D_x, "D_x");
        positive(D_y, "D_y");
        for (double dbm : {sigma2_dl_dbm, sigma2_ul_dbm, P_dl_dbm, P_ul_dbm})
            require(std::isfinite(dbm), "powers and noise variances must be finite dBm values");
        positive(epsilon, "epsilon");
        require(grid_L >= 2, "grid_L must be at least 2");
        require(max_iters >= 1, "max_iters must be at least 1");
        if (spacing_override)
            require(std::isfinite(*spacing_override) && *spacing_override >= 0.0, "d must be non-negative");
        if (length_override)
            positive(*length_override, "L_m");
        if (min_gap_override)
            positive(*min_gap_override, "delta_ell");

        auto check_list = [&](const std::vector<double> &v, const char *name, bool strictly)
        {
            if (v.empty())
                return;
            require(v.size() == K, std::string(name) + " must have K entries");
            for (double x : v)
                require(std::isfinite(x) && (strictly ? x > 0.0 : x >= 0.0),
                        std::string(name) + (strictly ? " entries must be positive" : " entries must be non-negative"));
        };
        check_list(weights_dl, "weights_dl", false);
        check_list(weights_ul, "weights_ul", false);
        check_list(alpha, "alpha", true);

        require(min_gap() * static_cast<double>(N - 1) < waveguide_length(),
                "delta_ell * (N - 1) must be smaller than the waveguide length");
    }
}
