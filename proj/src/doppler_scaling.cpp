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

#include "dopcomp/doppler_analysis.hpp"
#include "dopcomp/errors.hpp"
#include "dopcomp/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace dopcomp
{
    namespace
    {
        constexpr double pi = std::numbers::pi;
    }

    double asymptotic_spread(int M, double f_d, double kappa)
    {
        if (M < 1)
            throw domain_error("asymptotic_spread: M must be positive");
        return 2.0 * pi * kappa * f_d / std::sqrt(std::log(4.0 * M) * M);
    }

    ScalingFit fit_scaling(const std::vector<int> &Ms, double f_d, double d_over_lambda)
    {
        if (std::set<int>(Ms.begin(), Ms.end()).size() < 2)
            throw contract_error("fit_scaling: need at least two distinct M values");
        ScalingFit fit;
        fit.Ms = Ms;
        double shh = 0.0, ssh = 0.0;
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (int M : Ms)
        {
            const double sigma = spread_closed_form(closed_form_params(M, d_over_lambda, f_d)).sigma;
            fit.sigma.push_back(sigma);
            const double h = asymptotic_spread(M, f_d, 1.0);
            shh += h * h;
            ssh += sigma * h;
            const double x = std::log(static_cast<double>(M)), y = std::log(sigma);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double n = static_cast<double>(Ms.size());
        fit.kappa = ssh / shh;
        fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        return fit;
    }

    AppendixReport appendix_diagnostics(const ClosedFormParams &p, double slack)
    {
        AppendixReport r;
        r.M = p.M;
        r.I_1 = p.I_1;
        r.I_2 = p.I_2;
        r.I_max = p.I_max;
        const double M = p.M;
        const double Md = M * p.d_over_lambda;

        for (int i = 1; i <= p.I_max; ++i)
        {
            const double sn = M * std::sin((2.0 * i + 1.0) * pi / (2.0 * M));
            const double D = 1.0 / (sn * sn);
            const double u = (2.0 * i + 1.0) / (2.0 * Md);
            const double F = elliptic_K_complement(std::min(1.0, 0.5 * u)); // mu = sqrt(1 - u^2/4)
            const double lam = 4.0 * D * F;
            const double gam = (2.0 * i + 1.0) * (2.0 * i + 1.0) * D * F;
            if (i <= p.I_1)
                r.lambda_11 += lam, r.gamma_21 += gam;
            else if (i <= p.I_2)
                r.lambda_12 += lam, r.gamma_22 += gam;
            else
                r.lambda_13 += lam, r.gamma_23 += gam;
        }

        if (p.I_1 >= 1)
        {
            const double sn = M * std::sin((2.0 * p.I_1 + 1.0) * pi / (2.0 * M));
            r.D_seam = 1.0 / (sn * sn);
            r.D_seam_inner = 4.0 / ((2.0 * p.I_1 + 1.0) * (2.0 * p.I_1 + 1.0) * pi * pi);
            r.D_seam_outer = 1.0 / (M * M);
        }

        const double c6 = 6.0 / (pi * pi);
        auto upper = [&](const char *name, double value, double bound)
        { r.checks.push_back({name, value, bound * (1.0 + slack), value <= bound * (1.0 + slack)}); };
        auto lower = [&](const char *name, double value, double bound)
        { r.checks.push_back({name, value, bound * (1.0 - slack), value >= bound * (1.0 - slack)}); };
        upper("lambda_11 <= (2/pi) ln 2M", r.lambda_11, 2.0 / pi * std::log(2.0 * M));
        upper("gamma_21 <= M", r.gamma_21, M);
        lower("gamma_22 >= (6/pi^2)(1 - 2/pi) M", r.gamma_22, c6 * (1.0 - 2.0 / pi) * M);
        lower("gamma_23 >= (6/pi^2)(2d/lambda - 1 + 1/pi) M", r.gamma_23,
              c6 * (2.0 * p.d_over_lambda - 1.0 + 1.0 / pi) * M);
        return r;
    }
}
