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

#include <cstdint>
#include <random>

namespace mimo_pass
{
    /// Seeded stream used for every random draw in the library.
    ///
    /// The engine is std::mt19937_64 (fully specified by the C++ standard), and a
    /// uniform double is built from the top 53 bits of one draw: (x >> 11) * 2^-53.
    /// Both steps are portable, so the same seed gives the same stream everywhere.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        /// Uniform on [0, 1).
        double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

        /// Uniform on [lo, hi).
        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

        std::uint64_t next() { return engine_(); }

    private:
        std::mt19937_64 engine_;
    };
}
