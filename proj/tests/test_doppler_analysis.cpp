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

#include <catch2/catch_amalgamated.hpp>

#include "dopcomp/array_geometry.hpp"
#include "dopcomp/doppler_analysis.hpp"
#include "dopcomp/errors.hpp"
#include "dopcomp/quadrature.hpp"
#include "dopcomp/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace dopcomp;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    constexpr double pi = std::numbers::pi;

    // Trapezoid moments of the continuous closed-form density on a fine uniform grid over the full
    // support, which can reach slightly past 2 omega_d
    std::pair<double, double> trapezoid_moments(const ClosedFormParams &p, int points)
    {
        const double edge = (p.I_max + 1) * p.W0;
        const double a = -edge, h = 2.0 * edge / (points - 1);
        double m0 = 0.0, m2 = 0.0;
        for (int k = 0; k < points; ++k)
        {
            const double w = a + k * h;
            const double f = psd_density(w, p) * ((k == 0 || k == points - 1) ? 0.5 : 1.0);
            m0 += f;
            m2 += w * w * f;
        }
        return {m0 * h, m2 * h};
    }
}

TEST_CASE("thresholds solve their defining equations", "[doppler_analysis]")
{
    for (int M : {16, 128, 1024})
    {
        const double d = 0.45, r = 1.0 / (M * d);
        const auto t = solve_thresholds(M, d);
        CHECK_THAT(t.delta_m, WithinAbs(std::acos(1.0 - r), 1e-15));
        CHECK(std::abs(r / std::sin(t.theta_t) - t.delta_m) < 1e-12);
        CHECK(std::abs(0.5 * r / std::sin(t.theta_bar_t) - t.delta_bar_m) < 1e-12);
    }
    CHECK_THROWS_AS(solve_thresholds(1, 0.45), domain_error);
    CHECK_THROWS_AS(solve_thresholds(128, 0.5), domain_error);
}

TEST_CASE("sidelobe threshold matches a grid-scan root", "[doppler_analysis]")
{
    const int M = 128;
    const double d = 0.45, half_r = 0.5 / (M * d);
    const double target = std::acos(1.0 - half_r);
    auto f = [&](double th) { return half_r / std::sin(th) - target; };
    const int n = 2000000;
    const double h = (pi / 2.0) / n;
    double root = -1.0;
    for (int k = 1; k < n; ++k)
    {
        const double a = k * h, b = (k + 1) * h;
        if (f(a) > 0.0 && f(b) <= 0.0)
        {
            root = a + h * f(a) / (f(a) - f(b));
            break;
        }
    }
    REQUIRE(root > 0.0);
    CHECK_THAT(solve_thresholds(M, d).theta_bar_t, WithinAbs(root, 1e-9));
}

TEST_CASE("mainlobe threshold approaches 1 / sqrt(2 M d)", "[doppler_analysis]")
{
    const int M = 4096;
    const double d = 0.45;
    const double s = std::sin(solve_thresholds(M, d).theta_t);
    CHECK_THAT(s, WithinRel(1.0 / std::sqrt(2.0 * M * d), 0.01));
    // near half-wavelength spacing this is the 1 / sqrt(M) rule
    CHECK_THAT(std::sin(solve_thresholds(M, 0.49).theta_t), WithinRel(1.0 / std::sqrt(static_cast<double>(M)), 0.05));
}

TEST_CASE("closed-form constants", "[doppler_analysis]")
{
    const auto p = closed_form_params(128, 0.45, 1000.0);
    CHECK_THAT(p.W0 * p.t0, WithinAbs(pi, 1e-15));
    CHECK(p.I_max == 114);
    CHECK(p.I_min == -115);
    CHECK(p.I_max == -p.I_min - 1);
    CHECK(p.sidelobes.size() == 228u);
    CHECK(p.C0 > 0.0);
    CHECK(p.C1 > 0.0);
    for (const auto &s : p.sidelobes)
    {
        CHECK(s.D > 0.0);
        CHECK(s.C_bar > 0.0);
    }
    for (int i = 1; i <= p.I_max; i += 7)
    {
        const auto &a = p.sidelobe(i), &b = p.sidelobe(-(i + 1));
        CHECK(a.D == b.D);
        CHECK(a.C_bar == b.C_bar);
        CHECK(a.W == -b.W);
    }
    CHECK_THROWS_AS(p.sidelobe(0), contract_error);
    CHECK_THROWS_AS(closed_form_params(128, 0.45, 0.0), domain_error);
}

TEST_CASE("mirrored sidelobe integral evaluated directly", "[doppler_analysis]")
{
    const auto p = closed_form_params(128, 0.45, 1000.0);
    const double tb = p.thresholds.theta_bar_t;
    const double c5 = c_bar_scaled(128, 0.45, 5, tb), c_6 = c_bar_scaled(128, 0.45, -6, tb);
    CHECK_THAT(c_6, WithinRel(c5, 1e-9));
    CHECK_THAT(p.sidelobe(5).C_bar * p.omega_d, WithinRel(c5, 1e-12));
    const double D5 = 1.0 / std::pow(128.0 * std::sin(11.0 * pi / 256.0), 2);
    const double D_6 = 1.0 / std::pow(128.0 * std::sin(-11.0 * pi / 256.0), 2);
    CHECK_THAT(p.sidelobe(5).D, WithinRel(D5, 1e-14));
    CHECK_THAT(D_6, WithinRel(D5, 1e-9));
}

TEST_CASE("sidelobe integral without threshold is the complete elliptic integral", "[doppler_analysis]")
{
    for (int i : {1, 5, 40, 100})
    {
        const double u = (2.0 * i + 1.0) / (2.0 * 128 * 0.45);
        CHECK_THAT(c_bar_scaled(128, 0.45, i, 0.0), WithinRel(elliptic_K(std::sqrt(1.0 - u * u / 4.0)), 1e-9));
    }
}

TEST_CASE("autocorrelation at zero lag and symmetry", "[doppler_analysis]")
{
    const auto p = closed_form_params(128, 0.45, 1000.0);
    const auto s = spread_closed_form(p);
    const auto r0 = autocorr_closed_form(0.0, p);
    CHECK(std::abs(r0.imag()) < 1e-15);
    // R(0) is the delta weight plus the continuous PSD mass over 2 pi
    CHECK_THAT(r0.real(), WithinRel(p.C0 + (s.Lambda - p.C0) / (2.0 * pi), 1e-12));
    for (double tau : {1e-5, 3.3e-4, 2.1e-3})
    {
        const auto a = autocorr_closed_form(tau, p), b = autocorr_closed_form(-tau, p);
        CHECK(std::abs(a - std::conj(b)) < 1e-14);
    }
}

TEST_CASE("closed-form autocorrelation is the transform of the closed-form PSD", "[doppler_analysis]")
{
    const auto p = closed_form_params(64, 0.45, 1000.0);
    const GaussLegendre gl(24);
    for (double tau : {0.0, 1.7e-4, 9e-4})
    {
        double cont = 0.0;
        for (int k = -(p.I_max + 2); k <= p.I_max + 1; ++k)
            cont += gl.integrate([&](double w) { return psd_density(w, p) * std::cos(w * tau); }, k * p.W0,
                                 (k + 1) * p.W0);
        CHECK_THAT(autocorr_closed_form(tau, p).real(), WithinRel(p.C0 + cont / (2.0 * pi), 1e-9));
    }
}

TEST_CASE("autocorrelation is continuous at its removable singularities", "[doppler_analysis]")
{
    const auto p = closed_form_params(128, 0.45, 1000.0);
    for (double tau : {0.0, p.t0, -p.t0, 2.0 * p.t0, -2.0 * p.t0})
    {
        const double eps = 1e-11 * p.t0;
        const auto at = autocorr_closed_form(tau, p);
        const auto left = autocorr_closed_form(tau - eps, p), right = autocorr_closed_form(tau + eps, p);
        CHECK(std::abs(left - right) < 1e-9);
        CHECK(std::abs(at - 0.5 * (left + right)) < 1e-9);
    }
}

TEST_CASE("exact autocorrelation: one- and two-dimensional forms agree", "[doppler_analysis]")
{
    const int M = 8;
    const double d = 0.45, f_d = 1000.0;
    for (double tau : {0.0, 2e-4})
    {
        const auto one = autocorr_numeric_oracle(tau, M, d, f_d);
        const auto two = autocorr_double_integral(tau, M, d, f_d);
        CHECK(std::abs(one - two) < 1e-5 * std::abs(one));
    }
    const auto r0 = autocorr_numeric_oracle(0.0, M, d, f_d);
    CHECK(r0.real() > 0.0);
    CHECK(std::abs(r0.imag()) < 1e-12);
    const auto a = autocorr_numeric_oracle(3e-4, M, d, f_d), b = autocorr_numeric_oracle(-3e-4, M, d, f_d);
    CHECK(std::abs(a - std::conj(b)) < 1e-10);

    // midpoint Riemann sum of (2/pi) |G|^2 over the square
    const int n = 1500;
    const double h = pi / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
        {
            const double g = antenna_gain_y(M, d, std::cos((j + 0.5) * h) - std::cos((i + 0.5) * h));
            sum += g * g;
        }
    CHECK_THAT(r0.real(), WithinRel(2.0 / pi * sum * h * h, 1e-4));
}

TEST_CASE("closed-form autocorrelation follows the exact shape", "[doppler_analysis]")
{
    const int M = 256;
    const double d = 0.45, f_d = 1000.0;
    const auto p = closed_form_params(M, d, f_d);
    const double c0 = autocorr_closed_form(0.0, p).real();
    const double e0 = autocorr_numeric_oracle(0.0, M, d, f_d).real();
    double err = 0.0, ref = 0.0;
    const int n = 100;
    for (int k = 0; k <= n; ++k)
    {
        const double tau = 5.0 / f_d * k / n;
        const auto c = autocorr_closed_form(tau, p) / c0;
        const auto e = autocorr_numeric_oracle(tau, M, d, f_d) / e0;
        err += std::norm(c - e);
        ref += std::norm(e);
    }
    CHECK(std::sqrt(err / ref) < 0.10);
}

TEST_CASE("PSD windows, symmetry and support", "[doppler_analysis]")
{
    const auto p = closed_form_params(128, 0.45, 1000.0);
    CHECK_THAT(psd_mainlobe(p.W0 * (1.0 - 1e-12), p), WithinAbs(0.0, 1e-12 * p.C1));
    CHECK(psd_mainlobe(p.W0, p) == 0.0);
    CHECK(psd_mainlobe(-p.W0, p) == 0.0);

    const auto grid = uniform_omega_grid(p.omega_d);
    REQUIRE(grid.size() == 16384u);
    CHECK(grid.front() == -2.0 * p.omega_d);
    CHECK(grid.back() == 2.0 * p.omega_d);
    const auto curve = psd_closed_form(p, grid);
    CHECK(curve.dc_mass == p.C0);
    bool beyond_fd = false;
    double peak = -1.0, peak_w = 0.0;
    for (size_t k = 0; k < grid.size(); ++k)
    {
        const double w = grid[k], v = curve.density[k];
        CHECK(v >= -1e-12);
        CHECK(std::abs(v - psd_density(-w, p)) <= 1e-12 * std::max(v, 1e-300));
        if (std::abs(w) > p.omega_d && v > 0.0)
            beyond_fd = true;
        if (v > peak)
            peak = v, peak_w = w;
        // zero outside the union of the lobe windows
        bool inside = std::abs(w) < p.W0;
        for (const auto &s : p.sidelobes)
            inside = inside || std::abs(w + s.W) < 0.5 * p.W0;
        if (!inside)
            CHECK(v == 0.0);
    }
    CHECK(beyond_fd);
    CHECK(std::abs(peak_w) < 0.05 * p.omega_d);
}

TEST_CASE("spread moments agree with the integrated PSD", "[doppler_analysis]")
{
    for (int M : {128, 512})
    {
        const auto p = closed_form_params(M, 0.45, 1000.0);
        const auto s = spread_closed_form(p);
        const auto [m0, m2] = trapezoid_moments(p, 1 << 21);
        CHECK_THAT(s.Lambda, WithinRel(p.C0 + m0, 1e-6));
        CHECK_THAT(s.Gamma, WithinRel(m2, 1e-6));
        const auto gl = psd_moments_numeric(p);
        CHECK_THAT(s.Lambda, WithinRel(gl.zeroth, 1e-10));
        CHECK_THAT(s.Gamma, WithinRel(gl.second, 1e-10));
        CHECK_THAT(s.Lambda, WithinRel(s.lambda_mainlobe + s.lambda_sidelobes, 1e-14));
        CHECK_THAT(s.Gamma, WithinRel(s.gamma_mainlobe + s.gamma_sidelobes, 1e-14));
        CHECK_THAT(s.sigma, WithinRel(std::sqrt(s.Gamma / s.Lambda), 1e-15));
        CHECK(s.sigma <= 2.0 * p.omega_d);

        const auto wrong = spread_closed_form(p, GammaCoefficient::four_sixths);
        CHECK(std::abs(wrong.Gamma - m2) / m2 > 1e-6);
    }
}

TEST_CASE("outermost sidelobe can extend past twice the maximum Doppler", "[doppler_analysis]")
{
    // 2 M d = 460.8 at M = 512: the last window ends at 461 W0 > 2 omega_d
    const auto p = closed_form_params(512, 0.45, 1000.0);
    CHECK((p.I_max + 1) * p.W0 > 2.0 * p.omega_d);
    CHECK(psd_density(-2.0 * p.omega_d * (1.0 + 1e-4), p) > 0.0);
    const auto q = closed_form_params(128, 0.45, 1000.0); // 2 M d = 115.2
    CHECK((q.I_max + 1) * q.W0 <= 2.0 * q.omega_d);
}

TEST_CASE("closed-form spread is exactly linear in f_d", "[doppler_analysis]")
{
    const double a = spread_closed_form(closed_form_params(256, 0.45, 700.0)).sigma;
    const double b = spread_closed_form(closed_form_params(256, 0.45, 1400.0)).sigma;
    CHECK_THAT(b / a, WithinRel(2.0, 1e-10));
}

TEST_CASE("closed-form spread is well below the Jakes spread", "[doppler_analysis]")
{
    for (int M : {128, 256, 1024})
    {
        const auto p = closed_form_params(M, 0.45, 1000.0);
        CHECK(spread_closed_form(p).sigma * 5.0 < p.omega_d / std::sqrt(2.0));
    }
}

TEST_CASE("numeric spread oracle", "[doppler_analysis]")
{
    const double f_d = 1000.0;
    const double closed = spread_closed_form(closed_form_params(128, 0.45, f_d)).sigma;
    const auto num = spread_numeric_oracle(128, 0.45, f_d);
    CHECK(std::abs(num.sigma / closed - 1.0) < 0.15);
    const auto num2 = spread_numeric_oracle(128, 0.45, 2.0 * f_d, 2048, 4096);
    const auto num1 = spread_numeric_oracle(128, 0.45, f_d, 2048, 4096);
    CHECK_THAT(num2.sigma / num1.sigma, WithinRel(2.0, 0.02));
    const auto tiny = spread_numeric_oracle(2, 0.45, f_d, 512, 2048);
    CHECK(std::isfinite(tiny.sigma));
    CHECK(tiny.sigma <= 2.0 * 2.0 * pi * f_d);
    CHECK(spread_exact_moment(128, 0.45, f_d) / num.sigma == Catch::Approx(1.0).epsilon(0.01));
}

TEST_CASE("Monte-Carlo spread of the equivalent channel", "[doppler_analysis]")
{
    std::mt19937_64 rng(31);
    const auto still = empirical_channel_spread(128, 0.45, 0.0, rng, 20);
    CHECK(still.sigma == 0.0);
    CHECK(still.widened);

    const double closed = spread_closed_form(closed_form_params(128, 0.45, 1000.0)).sigma;
    std::mt19937_64 rng2(32);
    const auto emp = empirical_channel_spread(128, 0.45, 1000.0, rng2, 500);
    CHECK_FALSE(emp.widened);
    CHECK(emp.trials == 500);
    CHECK(emp.ci95_low < emp.sigma);
    CHECK(emp.sigma < emp.ci95_high);
    CHECK(std::abs(emp.sigma / closed - 1.0) < 0.15);
    CHECK(emp.stationarity_gap < 3.0 * emp.stationarity_sigma + 1e-12);
}

TEST_CASE("three spreads agree at M = 256", "[doppler_analysis]")
{
    const double f_d = 1000.0;
    const double closed = spread_closed_form(closed_form_params(256, 0.45, f_d)).sigma;
    const double num = spread_numeric_oracle(256, 0.45, f_d).sigma;
    std::mt19937_64 rng(33);
    const double emp = empirical_channel_spread(256, 0.45, f_d, rng, 500).sigma;
    CHECK(std::abs(num / closed - 1.0) < 0.15);
    CHECK(std::abs(emp / closed - 1.0) < 0.15);
    CHECK(std::abs(emp / num - 1.0) < 0.15);
}

TEST_CASE("Jakes reference", "[doppler_analysis]")
{
    const double f_d = 1000.0, wd = 2.0 * pi * f_d;
    const auto grid = uniform_omega_grid(wd, 4001);
    const auto j = jakes_reference_spread(f_d, grid);
    CHECK_THAT(j.spread, WithinRel(wd / std::sqrt(2.0), 0.005));
    for (size_t k = 0; k < grid.size(); ++k)
    {
        CHECK_THAT(j.psd.density[k], WithinRel(j.psd.density[grid.size() - 1 - k], 1e-12));
        if (std::abs(grid[k]) >= wd)
            CHECK(j.psd.density[k] == 0.0);
    }
}

TEST_CASE("asymptotic law and fitted scaling", "[doppler_analysis]")
{
    const double a = asymptotic_spread(256, 1000.0, 1.3), b = asymptotic_spread(1024, 1000.0, 1.3);
    CHECK_THAT(b / a, WithinRel(0.5 * std::sqrt(std::log(1024.0) / std::log(4096.0)), 1e-14));

    const std::vector<int> Ms{128, 256, 512, 1024, 2048, 4096};
    const auto fit = fit_scaling(Ms, 1000.0);
    CHECK(fit.slope >= -0.6);
    CHECK(fit.slope <= -0.4);
    CHECK(fit.kappa > 0.0);
    const auto fit2 = fit_scaling(Ms, 2000.0);
    CHECK_THAT(fit2.kappa, WithinRel(fit.kappa, 1e-8));
    CHECK_THROWS_AS(fit_scaling({256}, 1000.0), contract_error);
    CHECK_THROWS_AS(fit_scaling({256, 256}, 1000.0), contract_error);
    for (size_t k = 1; k < fit.sigma.size(); ++k)
        CHECK(fit.sigma[k] < fit.sigma[k - 1]);
}

TEST_CASE("cross-term sums scale with M", "[doppler_analysis]")
{
    for (int M : {128, 512})
    {
        const auto a = appendix_diagnostics(closed_form_params(M, 0.45, 1000.0));
        const auto b = appendix_diagnostics(closed_form_params(2 * M, 0.45, 1000.0));
        CHECK(std::abs(b.lambda_12 / a.lambda_12 - 0.5) <= 0.1);
        CHECK(std::abs(b.lambda_13 / a.lambda_13 - 0.5) <= 0.1);
        CHECK(std::abs(b.gamma_22 / a.gamma_22 - 2.0) <= 0.2);
        CHECK(std::abs(b.gamma_23 / a.gamma_23 - 2.0) <= 0.2);
        CHECK(a.I_1 == static_cast<int>(std::floor(M / pi - 0.5)));
        CHECK(a.D_seam < 2.0 * a.D_seam_inner);
        CHECK(a.D_seam > 0.5 * a.D_seam_inner);
        REQUIRE(a.checks.size() == 4u);
        for (const auto &c : a.checks)
            CHECK(std::isfinite(c.value));
    }
}
