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

#include "dopcomp/special_functions.hpp"
#include "dopcomp/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dopcomp
{
    double elliptic_K_complement(double k_prime)
    {
        if (!(k_prime > 0.0 && k_prime <= 1.0))
            throw domain_error("elliptic_K_complement: k' must lie in (0, 1], got " + std::to_string(k_prime));
        double a = 1.0, g = k_prime;
        for (int it = 0; it < 64 && std::abs(a - g) > 1e-16 * a; ++it)
        {
            const double an = 0.5 * (a + g);
            g = std::sqrt(a * g);
            a = an;
        }
        return std::numbers::pi / (2.0 * a);
    }

    double elliptic_K(double mu)
    {
        if (!(mu >= 0.0 && mu < 1.0))
            throw domain_error("elliptic_K: modulus must lie in [0, 1), got " + std::to_string(mu));
        // (1 - mu)(1 + mu) keeps the complement accurate for mu close to 1
        return elliptic_K_complement(std::sqrt((1.0 - mu) * (1.0 + mu)));
    }

    double elliptic_K_series(double mu, int terms)
    {
        double coef = 1.0, sum = 0.0, power = 1.0;
        for (int n = 0; n < terms; ++n)
        {
            sum += coef * coef * power;
            // (2n+2)! / (2^{2n+2} ((n+1)!)^2) = coef * (2n+1) / (2n+2)
            coef *= (2.0 * n + 1.0) / (2.0 * n + 2.0);
            power *= mu * mu;
        }
        return 0.5 * std::numbers::pi * sum;
    }
}
