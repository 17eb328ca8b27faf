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
#include "dopcomp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dopcomp
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        // sin(W x) / (pi x), limit W / pi at x = 0
        double sinc_term(double W, double x)
        {
            const double z = W * x;
            if (std::abs(z) < 1e-4)
                return W / pi * (1.0 - z * z / 6.0 + z * z * z * z / 120.0);
            return std::sin(z) / (pi * x);
        }

        void check_array(int M, double d_over_lambda)
        {
            if (M < 2)
                throw domain_error("need M >= 2, got " + std::to_string(M));
            if (!(d_over_lambda > 0.0 && d_over_lambda < 0.5))
                throw domain_error("d/lambda must lie in (0, 0.5), got " + std::to_string(d_over_lambda));
            if (M * d_over_lambda < 0.5)
                throw domain_error("M d / lambda must be at least 1/2 for the mainlobe thresholds, got " +
                                   std::to_string(M * d_over_lambda));
        }
    }

    Thresholds solve_thresholds(int M, double d_over_lambda)
    {
        check_array(M, d_over_lambda);
        const double r = 1.0 / (M * d_over_lambda);
        Thresholds t;
        t.delta_m = std::acos(1.0 - r);
        t.delta_bar_m = std::acos(1.0 - 0.5 * r);
        // r / sin(theta) = Delta is monotone in theta on (0, pi/2), so the root is explicit
        t.theta_t = std::asin(r / t.delta_m);
        t.theta_bar_t = std::asin(0.5 * r / t.delta_bar_m);
        return t;
    }

    const SidelobeTerm &ClosedFormParams::sidelobe(int i) const
    {
        for (const auto &s : sidelobes)
            if (s.i == i)
                return s;
        throw contract_error("no sidelobe with index " + std::to_string(i));
    }

    double c_bar_scaled(int M, double d_over_lambda, int i, double theta_bar_t, double rel_tol)
    {
        if (i == 0 || i == -1)
            throw contract_error("c_bar_scaled: i = 0 and i = -1 belong to the mainlobe");
        const double u = (2.0 * i + 1.0) / (2.0 * M * d_over_lambda);
        if (std::abs(u) > 2.0)
            throw contract_error("c_bar_scaled: sidelobe " + std::to_string(i) + " outside the visible range");

        if (i > 0)
        {
            // theta = b - s^2 removes the inverse square root at b, where cos(theta) - u = -1
            const double b = std::acos(u - 1.0);
            if (b <= theta_bar_t)
                return 0.0;
            const double s_max = std::sqrt(b - theta_bar_t);
            auto integrand = [b](double s)
            {
                const double s2 = s * s;
                const double one_plus = 2.0 * std::sin(b - 0.5 * s2) * std::sin(0.5 * s2); // 1 + cos(theta) - u
                const double one_minus = 2.0 - one_plus;
                if (s == 0.0)
                    return 2.0 / std::sqrt(one_minus * std::sin(b));
                return 2.0 * s / std::sqrt(one_minus * one_plus);
            };
            return integrate_adaptive(integrand, 0.0, s_max, rel_tol).value;
        }

        // i < -1: theta = a + s^2, singular at a where cos(theta) - u = +1
        const double a = std::acos(1.0 + u);
        const double upper = pi - theta_bar_t;
        if (upper <= a)
            return 0.0;
        const double s_max = std::sqrt(upper - a);
        auto integrand = [a](double s)
        {
            const double s2 = s * s;
            const double one_minus = 2.0 * std::sin(a + 0.5 * s2) * std::sin(0.5 * s2); // 1 - cos(theta) + u
            const double one_plus = 2.0 - one_minus;
            if (s == 0.0)
                return 2.0 / std::sqrt(one_plus * std::sin(a));
            return 2.0 * s / std::sqrt(one_minus * one_plus);
        };
        return integrate_adaptive(integrand, 0.0, s_max, rel_tol).value;
    }

    ClosedFormParams closed_form_params(int M, double d_over_lambda, double f_d, bool with_sidelobes)
    {
        if (!(f_d > 0.0))
            throw domain_error("closed_form_params: f_d must be positive, got " + std::to_string(f_d));
        ClosedFormParams p;
        p.M = M;
        p.d_over_lambda = d_over_lambda;
        p.f_d = f_d;
        p.thresholds = solve_thresholds(M, d_over_lambda);
        p.omega_d = 2.0 * pi * f_d;
        const double Md = M * d_over_lambda;
        const double r = 1.0 / Md;
        p.W0 = p.omega_d * r;
        p.t0 = pi * Md / p.omega_d;
        p.C0 = 8.0 * p.thresholds.delta_m * p.thresholds.theta_t / pi;
        p.C1 = -(2.0 / p.omega_d) * std::log(std::tan(0.5 * p.thresholds.theta_t));
        p.I_max = static_cast<int>(std::floor(2.0 * Md - 0.5));
        p.I_min = static_cast<int>(std::ceil(-2.0 * Md - 0.5));
        p.I_1 = static_cast<int>(std::floor(M / pi - 0.5));
        p.I_2 = static_cast<int>(std::floor(M * (1.0 - 1.0 / pi) - 0.5));
        if (!with_sidelobes)
            return p;

        // i > 0 computed once; i' = -(i+1) shares D and C_bar with opposite W
        std::vector<SidelobeTerm> positive;
        for (int i = 1; i <= p.I_max; ++i)
        {
            SidelobeTerm s;
            s.i = i;
            s.u = (2.0 * i + 1.0) * r / 2.0;
            s.W = s.u * p.omega_d;
            const double sn = M * std::sin((2.0 * i + 1.0) * pi / (2.0 * M));
            s.D = 1.0 / (sn * sn);
            s.bound = std::acos(s.u - 1.0);
            s.C_bar = c_bar_scaled(M, d_over_lambda, i, p.thresholds.theta_bar_t) / p.omega_d;
            positive.push_back(s);
        }
        for (auto it = positive.rbegin(); it != positive.rend(); ++it)
        {
            SidelobeTerm m = *it;
            m.i = -(it->i + 1);
            m.u = -it->u;
            m.W = -it->W;
            m.bound = std::acos(1.0 + m.u);
            if (m.i >= p.I_min)
                p.sidelobes.push_back(m);
        }
        for (const auto &s : positive)
            p.sidelobes.push_back(s);
        return p;
    }

    std::complex<double> autocorr_mainlobe(double tau, const ClosedFormParams &p)
    {
        return p.C0 + 2.0 * p.C1 * sinc_term(p.W0, tau) + p.C1 * sinc_term(p.W0, tau + p.t0) +
               p.C1 * sinc_term(p.W0, tau - p.t0);
    }

    std::complex<double> autocorr_sidelobe(double tau, const SidelobeTerm &s, const ClosedFormParams &p)
    {
        const double half = 0.5 * p.W0;
        const double shape = 2.0 * sinc_term(half, tau) + sinc_term(half, tau + 2.0 * p.t0) +
                             sinc_term(half, tau - 2.0 * p.t0);
        return s.D * s.C_bar * std::polar(1.0, -s.W * tau) * shape;
    }

    std::complex<double> autocorr_closed_form(double tau, const ClosedFormParams &p)
    {
        std::complex<double> R = autocorr_mainlobe(tau, p);
        for (const auto &s : p.sidelobes)
            R += autocorr_sidelobe(tau, s, p);
        return R;
    }

    std::vector<double> uniform_omega_grid(double omega_d, int points)
    {
        if (points < 2)
            throw contract_error("uniform_omega_grid: need at least 2 points");
        std::vector<double> grid(static_cast<size_t>(points));
        const double step = 4.0 * omega_d / (points - 1);
        for (int k = 0; k < points; ++k)
            grid[k] = -2.0 * omega_d + k * step;
        grid.back() = 2.0 * omega_d;
        return grid;
    }

    double psd_mainlobe(double omega, const ClosedFormParams &p)
    {
        if (!(std::abs(omega) < p.W0))
            return 0.0;
        return 2.0 * p.C1 * (1.0 + std::cos(omega * p.t0));
    }

    double psd_sidelobe(double omega, const SidelobeTerm &s, const ClosedFormParams &p)
    {
        const double x = omega + s.W;
        if (!(std::abs(x) < 0.5 * p.W0))
            return 0.0;
        return 2.0 * s.D * s.C_bar * (1.0 + std::cos(2.0 * x * p.t0));
    }

    double psd_density(double omega, const ClosedFormParams &p)
    {
        double v = psd_mainlobe(omega, p);
        // windows are [-(i+1) W0, -i W0] for i > 0; only the lobe containing omega contributes
        // and i' = -(i+1) mirrors it to [i W0, (i+1) W0]
        const int k = static_cast<int>(std::floor(std::abs(omega) / p.W0));
        const int negatives = -1 - p.I_min;
        for (int j = k - 1; j <= k + 1; ++j)
        {
            const int i = omega < 0.0 ? j : -(j + 1);
            if (i == 0 || i == -1 || i < p.I_min || i > p.I_max)
                continue;
            const size_t idx = i < 0 ? static_cast<size_t>(i - p.I_min) : static_cast<size_t>(negatives + i - 1);
            if (idx < p.sidelobes.size())
                v += psd_sidelobe(omega, p.sidelobes[idx], p);
        }
        return v;
    }

    PsdCurve psd_closed_form(const ClosedFormParams &p, const std::vector<double> &omega_grid)
    {
        PsdCurve c;
        c.dc_mass = p.C0;
        c.omega = omega_grid;
        c.density.resize(omega_grid.size());
        for (size_t k = 0; k < omega_grid.size(); ++k)
            c.density[k] = psd_density(omega_grid[k], p);
        return c;
    }

    SpreadResult spread_closed_form(const ClosedFormParams &p, GammaCoefficient coef)
    {
        SpreadResult s;
        const double W0 = p.W0, t0 = p.t0;
        const double cubic = coef == GammaCoefficient::one_sixth ? 1.0 / 6.0 : 4.0 / 6.0;
        s.lambda_mainlobe = p.C0 + 4.0 * p.C1 * W0;
        s.gamma_mainlobe = 4.0 * p.C1 * W0 * W0 * W0 / 3.0 - 8.0 * p.C1 * W0 / (t0 * t0);
        for (const auto &l : p.sidelobes)
        {
            const double dc = l.D * l.C_bar;
            s.lambda_sidelobes += 2.0 * dc * W0;
            s.gamma_sidelobes += cubic * dc * W0 * W0 * W0 - dc * W0 / (t0 * t0) + 2.0 * dc * W0 * l.W * l.W;
        }
        s.Lambda = s.lambda_mainlobe + s.lambda_sidelobes;
        s.Gamma = s.gamma_mainlobe + s.gamma_sidelobes;
        if (!(s.Lambda > 0.0))
            throw std::logic_error("spread_closed_form: non-positive Lambda");
        s.sigma = std::sqrt(std::max(0.0, s.Gamma) / s.Lambda);
        return s;
    }

    PsdMoments psd_moments_numeric(const ClosedFormParams &p)
    {
        static const GaussLegendre rule(24);
        PsdMoments m;
        m.zeroth = p.C0;
        const int edges = p.I_max + 2;
        for (int k = -edges; k < edges; ++k)
        {
            // the integrand is smooth inside each window-aligned panel
            const double a = k * p.W0, b = (k + 1) * p.W0;
            m.zeroth += rule.integrate([&](double w) { return psd_density(w, p); }, a, b);
            m.second += rule.integrate([&](double w) { return w * w * psd_density(w, p); }, a, b);
        }
        return m;
    }
}
