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

#include "mimo_pass/trace.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "mimo_pass/errors.hpp"

namespace mimo_pass
{
    void ConvergenceTrace::write_csv(std::ostream &os) const
    {
        const double ln2 = std::numbers::ln2;
        switch (kind)
        {
        case TraceKind::fp_bcd:
            os << "iter,objective_nats,objective_bits,wall_ms\n";
            break;
        case TraceKind::zf:
            os << "iter,trace_gamma,sum_rate_nats,wall_ms\n";
            break;
        case TraceKind::uplink:
            os << "iter,sum_rate_nats,sum_rate_bits,wall_ms\n";
            break;
        }
        os << std::setprecision(17);
        for (const auto &p : points)
        {
            os << p.iter << ',';
            if (kind == TraceKind::zf)
                os << p.objective << ',' << p.sum_rate_nats;
            else
                os << p.objective << ',' << p.objective / ln2;
            os << ',' << p.wall_ms << '\n';
        }
    }

    void ConvergenceTrace::write_csv(const std::string &path) const
    {
        std::ofstream os(path);
        if (!os)
            throw ConfigError("cannot open " + path + " for writing");
        write_csv(os);
    }

    bool is_monotone(const ConvergenceTrace &trace, double rel_slack)
    {
        const bool descent = trace.kind == TraceKind::zf;
        for (std::size_t i = 1; i < trace.points.size(); ++i)
        {
            const double prev = trace.points[i - 1].objective;
            const double cur = trace.points[i].objective;
            const double slack = rel_slack * std::abs(prev);
            if (descent ? cur > prev + slack : cur < prev - slack)
                return false;
        }
        return true;
    }
}
