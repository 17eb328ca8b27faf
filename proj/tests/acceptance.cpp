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

// Acceptance suite: one PASS/FAIL line per check, nonzero exit if any check fails

#include "dopcomp/validation.hpp"

#include <cstdio>
#include <iostream>

int main()
{
    const dopcomp::SystemConfig cfg;
    int failed = 0;
    for (const auto &check : dopcomp::validation_checks())
    {
        const auto r = dopcomp::run_check(check, cfg, dopcomp::ValidateOptions{});
        failed += !r.passed;
        std::cout << dopcomp::format_check_line(r) << "  (" << r.seconds << " s)" << std::endl;
    }
    std::cout << (failed ? "FAILED: " : "ALL PASSED: ") << dopcomp::validation_checks().size() - failed << "/"
              << dopcomp::validation_checks().size() << std::endl;
    return failed ? 1 : 0;
}
