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

#ifndef dopcomp_doppler_analysis_H
#define dopcomp_doppler_analysis_H

#include <complex>
#include <random>
#include <string>
#include <vector>

namespace dopcomp
{
    // ---------------------------------------------------------------------------------------------
    // Closed-form autocorrelation, PSD and Doppler spread of the equivalent (beamformed,
    // pre-compensated) uplink channel. Notation: r = lambda / (M d), omega_d = 2 pi f_d.
    // ---------------------------------------------------------------------------------------------

    struct Thresholds
    {
        double theta_t = 0.0;     // mainlobe threshold, sin(theta_t) = r / Delta_m
        double theta_bar_t = 0.0; // sidelobe threshold, sin(theta_bar_t) = (r/2) / Delta_bar_m
        double delta_m = 0.0;     // arccos(1 - r)
        double delta_bar_m = 0.0; // arccos(1 - r/2)
    };

    // Throws domain_error unless M >= 2, 0 < d/lambda < 0.5 and M d / lambda >= 1/2
    Thresholds solve_thresholds(int M, double d_over_lambda);

    struct SidelobeTerm
    {
        int i = 0;
        double u = 0.0;     // (2i + 1) r / 2
        double W = 0.0;     // u omega_d, rad/s
        double D = 0.0;     // 1 / (M sin((2i+1) pi / 2M))^2
        double bound = 0.0; // b_i = arccos(u - 1) for i > 0, a_i = arccos(1 + u) for i < -1
        double C_bar = 0.0; // seconds
    };

    struct ClosedFormParams
    {
        int M = 0;
        double d_over_lambda = 0.0;
        double f_d = 0.0;
        double omega_d = 0.0; // rad/s
        double W0 = 0.0;      // omega_d r
        double t0 = 0.0;      // pi / (omega_d r)
        Thresholds thresholds;
        double C0 = 0.0; // 8 Delta_m theta_t / pi
        double C1 = 0.0; // -(2 / omega_d) ln tan(theta_t / 2)
        int I_min = 0, I_max = 0;
        int I_1 = 0, I_2 = 0; // floor(M/pi - 1/2), floor(M (1 - 1/pi) - 1/2)
        std::vector<SidelobeTerm> sidelobes; // i = I_min .. I_max without {-1, 0}, ascending

        const SidelobeTerm &sidelobe(int i) const; // throws contract_error if i is not in the table
    };

    // omega_d C_bar_i by adaptive quadrature with endpoint substitution (independent of f_d).
    // Evaluates the i < -1 form directly when i < -1.
    double c_bar_scaled(int M, double d_over_lambda, int i, double theta_bar_t, double rel_tol = 1e-11);

    // The sidelobe table is filled for i > 0 and mirrored to -(i+1). Requires f_d > 0.
    // with_sidelobes = false leaves the table empty (mainlobe constants only).
    ClosedFormParams closed_form_params(int M, double d_over_lambda, double f_d, bool with_sidelobes = true);

    // Mainlobe plus all sidelobe terms; removable singularities evaluated by their limits
    std::complex<double> autocorr_mainlobe(double tau, const ClosedFormParams &p);
    std::complex<double> autocorr_sidelobe(double tau, const SidelobeTerm &s, const ClosedFormParams &p);
    std::complex<double> autocorr_closed_form(double tau, const ClosedFormParams &p);

    struct PsdCurve
    {
        double dc_mass = 0.0; // weight of the delta at omega = 0
        std::vector<double> omega;
        std::vector<double> density;
    };

    // 'points' uniform samples over [-2 omega_d, 2 omega_d], endpoints included
    std::vector<double> uniform_omega_grid(double omega_d, int points = 16384);

    // Continuous part of the PSD and its per-lobe components
    double psd_mainlobe(double omega, const ClosedFormParams &p);
    double psd_sidelobe(double omega, const SidelobeTerm &s, const ClosedFormParams &p);
    double psd_density(double omega, const ClosedFormParams &p);
    PsdCurve psd_closed_form(const ClosedFormParams &p, const std::vector<double> &omega_grid);

    // Per-sidelobe second-moment coefficient of W0^3: 1/6 follows from integrating the PSD;
    // 4/6 is kept only to demonstrate that it breaks the moment consistency.
    enum class GammaCoefficient
    {
        one_sixth,
        four_sixths,
    };

    struct SpreadResult
    {
        double Lambda = 0.0;
        double Gamma = 0.0;
        double sigma = 0.0; // rad/s
        double lambda_mainlobe = 0.0, lambda_sidelobes = 0.0;
        double gamma_mainlobe = 0.0, gamma_sidelobes = 0.0;
    };

    SpreadResult spread_closed_form(const ClosedFormParams &p, GammaCoefficient coef = GammaCoefficient::one_sixth);

    // int P and int omega^2 P of the continuous closed-form density by Gauss-Legendre on each interval
    // between consecutive window edges (multiples of W0); dc_mass is added to the zeroth moment.
    struct PsdMoments
    {
        double zeroth = 0.0;
        double second = 0.0;
    };
    PsdMoments psd_moments_numeric(const ClosedFormParams &p);

    // ---------------------------------------------------------------------------------------------
    // Independent oracles
    // ---------------------------------------------------------------------------------------------

    // Exact autocorrelation (2/pi) int int |G(theta, theta~)|^2 exp(-j omega_d tau (cos theta~ - cos theta)),
    // reduced to one dimension: (2/pi) int_{-2}^{2} G(y)^2 K(k' = |y|/2) exp(-j omega_d tau y) dy
    std::complex<double> autocorr_numeric_oracle(double tau, int M, double d_over_lambda, double f_d);

    // Literal two-dimensional iterated adaptive quadrature of the same integral (slow; small M)
    std::complex<double> autocorr_double_integral(double tau, int M, double d_over_lambda, double f_d,
                                                  double rel_tol = 1e-6);

    // Spread of the exact PSD omega_d^2 int y^2 S / int S (no transform)
    double spread_exact_moment(int M, double d_over_lambda, double f_d);

    struct NumericSpread
    {
        double sigma = 0.0; // rad/s
        std::vector<double> omega;
        std::vector<double> density; // PSD from the transformed autocorrelation
    };

    // PSD as the windowed discrete transform of exact autocorrelation samples, then the second-moment
    // ratio by trapezoid integration over [-2 omega_d, 2 omega_d]
    NumericSpread spread_numeric_oracle(int M, double d_over_lambda, double f_d, int lags = 4096, int points = 16384);

    struct EmpiricalSpread
    {
        double sigma = 0.0; // rad/s
        double ci95_low = 0.0, ci95_high = 0.0;
        int trials = 0;
        bool widened = false;            // fewer than 100 trials: interval doubled
        double stationarity_gap = 0.0;   // |R(t1, t1+tau) - R(t2, t2+tau)| / R(0)
        double stationarity_sigma = 0.0; // Monte-Carlo standard error of that gap, same units
    };

    // Monte-Carlo spread of the discretized equivalent channel: path angles on a uniform grid of
    // 'path_points' bin centers with i.i.d. phases, beams on the 'beam_spacing_deg' grid with i.i.d.
    // phases, E0 = sqrt(2). Spread via E|g'(t)|^2 / E|g(t)|^2.
    EmpiricalSpread empirical_channel_spread(int M, double d_over_lambda, double f_d, std::mt19937_64 &rng, int trials,
                                             int path_points = 720, double beam_spacing_deg = 2.0);

    struct JakesReference
    {
        PsdCurve psd; // normalized to unit mass, no delta
        double spread = 0.0;
    };

    JakesReference jakes_reference_spread(double f_d, const std::vector<double> &omega_grid);

    // ---------------------------------------------------------------------------------------------
    // Scaling law and cross-term sum diagnostics
    // ---------------------------------------------------------------------------------------------

    // 2 pi kappa f_d (ln 4M)^{-1/2} M^{-1/2}
    double asymptotic_spread(int M, double f_d, double kappa);

    struct ScalingFit
    {
        double kappa = 0.0;
        double slope = 0.0;
        std::vector<int> Ms;
        std::vector<double> sigma; // closed form, rad/s
    };

    // Least-squares kappa and log-log slope of the closed-form spread; throws contract_error
    // for fewer than two distinct M
    ScalingFit fit_scaling(const std::vector<int> &Ms, double f_d, double d_over_lambda = 0.45);

    struct DiagnosticCheck
    {
        std::string name;
        double value = 0.0;
        double bound = 0.0;
        bool holds = false;
    };

    struct AppendixReport
    {
        int M = 0;
        int I_1 = 0, I_2 = 0, I_max = 0;
        double lambda_11 = 0.0, lambda_12 = 0.0, lambda_13 = 0.0;
        double gamma_21 = 0.0, gamma_22 = 0.0, gamma_23 = 0.0;
        double D_seam = 0.0;                          // exact D_{I_1}
        double D_seam_inner = 0.0, D_seam_outer = 0.0; // the two piecewise branches at i = I_1
        std::vector<DiagnosticCheck> checks;           // bound violations are findings, not errors
    };

    // Sums with exact D_i and F(mu_i) = K(sqrt(1 - u_i^2 / 4)); slack widens each bound by 10%
    AppendixReport appendix_diagnostics(const ClosedFormParams &p, double slack = 0.10);
}

#endif
