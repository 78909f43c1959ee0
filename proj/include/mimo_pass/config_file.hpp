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

#include <istream>
#include <string>

#include "mimo_pass/experiment.hpp"

namespace mimo_pass
{
    /// Built-in parameter sets. "full" is the full-scale setup (grid_L = 1e5, 500 seeds);
    /// "desk" keeps the geometry with grid_L = 4096 and 20 seeds.
    ExperimentSpec preset(const std::string &name);

    /// Applies a flat key=value config to spec. Blank lines and lines starting with '#'
    /// are skipped. Keys are the ScenarioConfig / ExperimentSpec field names:
    ///
    ///   M N K f i_ref a D_x D_y sigma2_dl_dbm sigma2_ul_dbm P_dl_dbm P_ul_dbm
    ///   weights_dl weights_ul alpha (comma lists) grid_L epsilon max_iters
    ///   d L_m delta_ell (overrides of the derived geometry)
    ///   mode seeds (count, expands to 0..n-1) seed_list (comma list) sweep (AXIS:v1,v2)
    ///
    /// Unknown keys and malformed values throw ConfigError naming the line.
    void apply_config(ExperimentSpec &spec, std::istream &in);
    void apply_config_file(ExperimentSpec &spec, const std::string &path);
}
