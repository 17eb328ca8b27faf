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

#ifndef dopcomp_errors_H
#define dopcomp_errors_H

#include <stdexcept>
#include <string>

namespace dopcomp
{
    // Argument outside the mathematical domain of an operation (angles outside [0, pi], mu >= 1, ...)
    class domain_error : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Caller violated a shape or length contract
    class contract_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Inconsistent or malformed SystemConfig / config file
    class config_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Adaptive quadrature did not reach its tolerance; carries the worst subinterval
    class quadrature_error : public std::runtime_error
    {
    public:
        quadrature_error(const std::string &what, double lo, double hi, double err_estimate)
            : std::runtime_error(what + " (worst interval [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                 "], error estimate " + std::to_string(err_estimate) + ")"),
              interval_lo(lo), interval_hi(hi), error_estimate(err_estimate)
        {
        }
        double interval_lo;
        double interval_hi;
        double error_estimate;
    };
}

#endif
