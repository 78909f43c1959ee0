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

#include <stdexcept>
#include <string>

#include "mimo_pass/trace.hpp"

namespace mimo_pass
{
    /// Base class of all errors raised by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Invalid scenario parameters, malformed config files, bad CLI values.
    class ConfigError : public Error
    {
    public:
        using Error::Error;
    };

    /// A location column violates the waveguide bounds or the minimum spacing.
    class FeasibilityError : public Error
    {
    public:
        using Error::Error;
    };

    /// All-zero precoder or receiver where a nonzero one is required.
    class DegenerateError : public Error
    {
    public:
        using Error::Error;
    };

    /// Linear system without a unique solution.
    class SingularSystemError : public Error
    {
    public:
        using Error::Error;
    };

    /// Zero-forcing needs a full column-rank channel (M >= K, and M > K for the location search).
    class RankDeficiencyError : public Error
    {
    public:
        using Error::Error;
    };

    /// Non-finite objective during an iterative run. Carries the trace recorded so far.
    class NumericalError : public Error
    {
    public:
        NumericalError(const std::string &what, ConvergenceTrace trace)
            : Error(what), trace_(std::move(trace)) {}

        const ConvergenceTrace &trace() const noexcept { return trace_; }

    private:
        ConvergenceTrace trace_;
    };
}
