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

#ifndef dopcomp_quadrature_H
#define dopcomp_quadrature_H

#include <complex>
#include <functional>
#include <vector>

namespace dopcomp
{
    struct QuadratureResult
    {
        double value = 0.0;
        double error_estimate = 0.0;
        int evaluations = 0;
    };

    // Globally adaptive Gauss-Kronrod (7/15) on [a, b]; stops when the summed error estimate drops below
    // max(abs_tol, rel_tol |I|). Throws quadrature_error with the worst interval when max_intervals is hit.
    QuadratureResult integrate_adaptive(const std::function<double(double)> &f, double a, double b,
                                        double rel_tol = 1e-10, double abs_tol = 0.0, int max_intervals = 2000);

    // Complex integrand, real and imaginary parts integrated on a shared partition
    std::complex<double> integrate_adaptive_complex(const std::function<std::complex<double>(double)> &f, double a,
                                                    double b, double rel_tol = 1e-10, double abs_tol = 0.0,
                                                    int max_intervals = 2000);

    // Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n
    struct GaussLegendre
    {
        std::vector<double> nodes;
        std::vector<double> weights;

        explicit GaussLegendre(int n);

        // Fixed-order rule mapped to [a, b]
        template <typename F>
        auto integrate(const F &f, double a, double b) const -> decltype(f(a))
        {
            const double h = 0.5 * (b - a), c = 0.5 * (b + a);
            decltype(f(a)) s{};
            for (size_t k = 0; k < nodes.size(); ++k)
                s += weights[k] * f(c + h * nodes[k]);
            return s * h;
        }
    };
}

#endif
