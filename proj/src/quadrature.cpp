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

#include "dopcomp/quadrature.hpp"
#include "dopcomp/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <queue>

namespace dopcomp
{
    namespace
    {
        // Kronrod 15-point abscissae (positive half, descending) and weights; Gauss 7-point weights
        constexpr std::array<double, 8> xk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                              0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                              0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                              0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
        constexpr std::array<double, 8> wk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                              0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                              0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                              0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
        constexpr std::array<double, 4> wg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                              0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

        template <typename T>
        struct Segment
        {
            double a, b;
            T value;
            double error;
            bool operator<(const Segment &o) const { return error < o.error; }
        };

        double magnitude(double v) { return std::abs(v); }
        double magnitude(std::complex<double> v) { return std::abs(v); }

        template <typename T, typename F>
        Segment<T> gk15(const F &f, double a, double b)
        {
            const double c = 0.5 * (a + b), h = 0.5 * (b - a);
            const T fc = f(c);
            T kron = fc * wk[7];
            T gauss = fc * wg[3];
            for (int j = 0; j < 7; ++j)
            {
                const double dx = h * xk[j];
                const T s = f(c - dx) + f(c + dx);
                kron += wk[j] * s;
                if (j % 2 == 1)
                    gauss += wg[j / 2] * s;
            }
            return {a, b, kron * h, magnitude((kron - gauss) * h)};
        }

        template <typename T, typename F>
        Segment<T> adapt(const F &f, double a, double b, double rel_tol, double abs_tol, int max_intervals, int &evals)
        {
            std::priority_queue<Segment<T>> heap;
            heap.push(gk15<T>(f, a, b));
            evals = 15;
            T total = heap.top().value;
            double err = heap.top().error;
            int splits = 0;
            while (err > std::max(abs_tol, rel_tol * magnitude(total)))
            {
                if (static_cast<int>(heap.size()) >= max_intervals)
                {
                    const auto &w = heap.top();
                    throw quadrature_error("integrate_adaptive: tolerance not reached", w.a, w.b, err);
                }
                const Segment<T> worst = heap.top();
                heap.pop();
                const double mid = 0.5 * (worst.a + worst.b);
                const auto left = gk15<T>(f, worst.a, mid);
                const auto right = gk15<T>(f, mid, worst.b);
                evals += 30;
                total += left.value + right.value - worst.value;
                err += left.error + right.error - worst.error;
                heap.push(left);
                heap.push(right);
                // rebuild the sums occasionally to shed accumulated rounding
                if (++splits % 100 == 0)
                {
                    auto copy = heap;
                    total = T{};
                    err = 0.0;
                    while (!copy.empty())
                    {
                        total += copy.top().value;
                        err += copy.top().error;
                        copy.pop();
                    }
                }
            }
            return {a, b, total, err};
        }
    }

    QuadratureResult integrate_adaptive(const std::function<double(double)> &f, double a, double b, double rel_tol,
                                        double abs_tol, int max_intervals)
    {
        QuadratureResult r;
        if (a == b)
            return r;
        const auto s = adapt<double>(f, a, b, rel_tol, abs_tol, max_intervals, r.evaluations);
        r.value = s.value;
        r.error_estimate = s.error;
        return r;
    }

    std::complex<double> integrate_adaptive_complex(const std::function<std::complex<double>(double)> &f, double a,
                                                    double b, double rel_tol, double abs_tol, int max_intervals)
    {
        if (a == b)
            return 0.0;
        int evals = 0;
        return adapt<std::complex<double>>(f, a, b, rel_tol, abs_tol, max_intervals, evals).value;
    }

    GaussLegendre::GaussLegendre(int n)
    {
        if (n < 1)
            throw contract_error("GaussLegendre: order must be positive");
        nodes.resize(n);
        weights.resize(n);
        for (int i = 0; i < (n + 1) / 2; ++i)
        {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it)
            {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k)
                {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                    break;
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
}
