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
#include <iosfwd>
#include <string>
#include <vector>

namespace mimo_pass
{
    /// Which algorithm produced a trace; selects the CSV column layout.
    enum class TraceKind
    {
        fp_bcd,   // iter, objective_nats, objective_bits, wall_ms
        zf,       // iter, trace_gamma, sum_rate_nats, wall_ms
        uplink    // iter, sum_rate_nats, sum_rate_bits, wall_ms
    };

    struct TracePoint
    {
        std::size_t iter = 0;
        double objective = 0.0;      // tracked objective (sum-rate in nats, or tr Gamma for ZF)
        double sum_rate_nats = 0.0;  // weighted sum-rate at this point
        double wall_ms = 0.0;        // elapsed since the start of the run
    };

    /// Per-iteration record of an iterative run. Entry 0 is the initial point.
    struct ConvergenceTrace
    {
        TraceKind kind = TraceKind::fp_bcd;
        std::vector<TracePoint> points;

        /// Number of completed iterations (entries after the initial point).
        std::size_t iterations() const { return points.empty() ? 0 : points.size() - 1; }

        void write_csv(std::ostream &os) const;
        void write_csv(const std::string &path) const;
    };

    /// True if the trace objective never moves against its direction (ascent for
    /// fp_bcd/uplink, descent for zf) by more than rel_slack relative to the previous value.
    bool is_monotone(const ConvergenceTrace &trace, double rel_slack);
}
