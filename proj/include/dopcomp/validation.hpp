// SPDX-License-Identifier: Apache-2.0
//
// dopcomp: angle-domain Doppler compensation for high-mobility massive MIMO uplink
// Copyright (C) 2026 dopcomp contributors
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

#ifndef dopcomp_validation_H
#define dopcomp_validation_H

#include <functional>
#include <string>
#include <vector>

#include "dopcomp/experiments.hpp"
#include "dopcomp/system_config.hpp"

namespace dopcomp
{
    struct CheckResult
    {
        std::string id;
        std::string description;
        bool passed = false;
        std::string detail;
        double seconds = 0.0;
    };

    struct ValidateOptions
    {
        int ser_frames = 2000;   // per SER point
        int mc_trials = 500;     // Monte-Carlo trials of the empirical spread
        bool include_ser = true; // the SER ordering check dominates the runtime
    };

    struct ValidationCheck
    {
        std::string id;
        std::string description;
        std::function<CheckResult(const SystemConfig &, const ValidateOptions &)> run;
    };

    // The acceptance checks in a fixed order. Each check catches its own exceptions and reports them
    // as a failure.
    const std::vector<ValidationCheck> &validation_checks();

    CheckResult run_check(const ValidationCheck &check, const SystemConfig &cfg, const ValidateOptions &opt);

    // Runs every check (optionally reporting each line as it finishes) and tabulates the results in
    // validate.csv; 'passed' is false if any check failed
    ExperimentOutput run_validate(const SystemConfig &cfg, const ValidateOptions &opt = {},
                                  const std::function<void(const CheckResult &)> &on_result = {});

    // "PASS <id>: <description> | <detail>"
    std::string format_check_line(const CheckResult &r);
}

#endif
