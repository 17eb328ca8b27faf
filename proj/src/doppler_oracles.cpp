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
#include "dopcomp/array_geometry.hpp"
#include "dopcomp/errors.hpp"
#include "dopcomp/quadrature.hpp"
#include "dopcomp/special_functions.hpp"

#include <armadillo>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dopcomp
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        // Quadrature nodes y in (0, 2] with weights w * S(y), where S(y) = (2/pi) G(y)^2 K(k' = y/2)
        // is the direction-cosine-difference density of the exact autocorrelation
        struct DensityNodes
        {
            std::vector<double> y;
            std::vector<double> ws;
        };

        DensityNodes density_nodes(int M, double d_over_lambda, double max_width)
        {
            static const GaussLegendre rule(16);
            const double r = 1.0 / (M * d_over_lambda); // array-factor null spacing
            std::vector<double> edges{0.0};
            // geometric grading toward the logarithmic singularity of K at y = 0
            const double first = std::min(r, 2.0);
            for (int j = 20; j >= 1; --j)
                edges.push_back(first * std::pow(0.2, j));
            for (double e = first; e < 2.0 - 1e-15; e += r)
                edges.push_back(std::min(e, 2.0));
            if (edges.back() < 2.0)
                edges.push_back(2.0);

            DensityNodes n;
            for (size_t k = 0; k + 1 < edges.size(); ++k)
            {
                const double a = edges[k], b = edges[k + 1];
                if (b <= a)
                    continue;
                const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
                const double h = (b - a) / pieces;
                for (int piece = 0; piece < pieces; ++piece)
                {
                    const double lo = a + piece * h, hi = lo + h;
                    const double c = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
                    for (size_t q = 0; q < rule.nodes.size(); ++q)
                    {
                        const double y = c + half * rule.nodes[q];
                        const double g = antenna_gain_y(M, d_over_lambda, y);
                        const double k = elliptic_K_complement(std::min(1.0, 0.5 * y));
                        n.y.push_back(y);
                        n.ws.push_back(half * rule.weights[q] * (2.0 / pi) * g * g * k);
                    }
                }
            }
            return n;
        }

        void check_oracle_args(int M, double d_over_lambda, double f_d)
        {
            if (M < 1)
                throw domain_error("oracle: M must be positive");
            if (!(d_over_lambda > 0.0 && d_over_lambda < 0.5))
                throw domain_error("oracle: d/lambda must lie in (0, 0.5)");
            if (!(f_d >= 0.0))
                throw domain_error("oracle: f_d must be non-negative");
        }
    }

    std::complex<double> autocorr_numeric_oracle(double tau, int M, double d_over_lambda, double f_d)
    {
        check_oracle_args(M, d_over_lambda, f_d);
        const double rate = 2.0 * pi * f_d * std::abs(tau); // phase per unit y
        const double width = rate > 0.0 ? std::min(0.25, pi / rate) : 0.25;
        const auto n = density_nodes(M, d_over_lambda, width);
        // S is even in y, so the imaginary part cancels
        double sum = 0.0;
        for (size_t k = 0; k < n.y.size(); ++k)
            sum += n.ws[k] * std::cos(rate * n.y[k]);
        return 2.0 * sum;
    }

    std::complex<double> autocorr_double_integral(double tau, int M, double d_over_lambda, double f_d, double rel_tol)
    {
        check_oracle_args(M, d_over_lambda, f_d);
        const double wt = 2.0 * pi * f_d * tau;
        auto outer = [&](double theta)
        {
            const double c = std::cos(theta);
            auto inner = [&](double theta_tilde)
            {
                const double y = std::cos(theta_tilde) - c;
                const double g = antenna_gain_y(M, d_over_lambda, y);
                return (2.0 / pi) * g * g * std::polar(1.0, -wt * y);
            };
            return integrate_adaptive_complex(inner, 0.0, pi, 0.01 * rel_tol, 1e-14, 20000);
        };
        return integrate_adaptive_complex(outer, 0.0, pi, rel_tol, 1e-13, 20000);
    }

    double spread_exact_moment(int M, double d_over_lambda, double f_d)
    {
        check_oracle_args(M, d_over_lambda, f_d);
        const auto n = density_nodes(M, d_over_lambda, 0.25);
        double m0 = 0.0, m2 = 0.0;
        for (size_t k = 0; k < n.y.size(); ++k)
        {
            m0 += n.ws[k];
            m2 += n.ws[k] * n.y[k] * n.y[k];
        }
        return 2.0 * pi * f_d * std::sqrt(m2 / m0);
    }

    NumericSpread spread_numeric_oracle(int M, double d_over_lambda, double f_d, int lags, int points)
    {
        check_oracle_args(M, d_over_lambda, f_d);
        if (lags < 2 || points < 3)
            throw contract_error("spread_numeric_oracle: need at least 2 lags and 3 grid points");
        const double omega_d = 2.0 * pi * f_d;

        NumericSpread out;
        out.omega = uniform_omega_grid(std::max(omega_d, 1e-300), points);
        out.density.assign(out.omega.size(), 0.0);
        if (omega_d == 0.0)
            return out;

        // lag spacing pi / (2 omega_d) is the Nyquist interval for support [-2 omega_d, 2 omega_d]
        const double dtau = pi / (2.0 * omega_d);
        const double y_step = pi / 2.0; // omega_d dtau
        const auto n = density_nodes(M, d_over_lambda, 1.0 / lags);

        std::vector<double> R(static_cast<size_t>(lags) + 1, 0.0);
        for (size_t q = 0; q < n.y.size(); ++q)
        {
            const std::complex<double> rot = std::polar(1.0, y_step * n.y[q]);
            std::complex<double> z = 1.0;
            for (int k = 0; k <= lags; ++k)
            {
                R[k] += 2.0 * n.ws[q] * z.real();
                z *= rot;
            }
        }

        // Hann lag window, then the even cosine transform
        for (int k = 1; k <= lags; ++k)
        {
            const double c = std::cos(0.5 * pi * k / (lags + 1.0));
            R[k] *= c * c;
        }
        for (size_t j = 0; j < out.omega.size(); ++j)
        {
            const std::complex<double> rot = std::polar(1.0, out.omega[j] * dtau);
            std::complex<double> z = rot;
            double s = R[0];
            for (int k = 1; k <= lags; ++k)
            {
                s += 2.0 * R[k] * z.real();
                z *= rot;
            }
            out.density[j] = dtau * s;
        }

        double m0 = 0.0, m2 = 0.0;
        for (size_t j = 0; j + 1 < out.omega.size(); ++j)
        {
            const double h = out.omega[j + 1] - out.omega[j];
            const double a = out.omega[j], b = out.omega[j + 1];
            m0 += 0.5 * h * (out.density[j] + out.density[j + 1]);
            m2 += 0.5 * h * (a * a * out.density[j] + b * b * out.density[j + 1]);
        }
        out.sigma = std::sqrt(std::max(0.0, m2 / m0));
        return out;
    }

    EmpiricalSpread empirical_channel_spread(int M, double d_over_lambda, double f_d, std::mt19937_64 &rng, int trials,
                                             int path_points, double beam_spacing_deg)
    {
        check_oracle_args(M, d_over_lambda, f_d);
        if (trials < 2)
            throw contract_error("empirical_channel_spread: need at least 2 trials");
        if (path_points < 1)
            throw contract_error("empirical_channel_spread: need at least one path");

        const BeamGrid grid = build_beam_grid(beam_spacing_deg);
        const arma::uword P = static_cast<arma::uword>(path_points), Q = grid.size();
        const double omega_d = 2.0 * pi * f_d;
        const double E0 = std::sqrt(2.0);

        arma::vec cp(P), cb(Q);
        for (arma::uword p = 0; p < P; ++p)
            cp(p) = std::cos((p + 0.5) * pi / P);
        for (arma::uword i = 0; i < Q; ++i)
            cb(i) = std::cos(grid.angles[i]);
        arma::cx_mat G(P, Q);
        for (arma::uword p = 0; p < P; ++p)
            for (arma::uword i = 0; i < Q; ++i)
                G(p, i) = antenna_gain_y(M, d_over_lambda, cp(p) - cb(i));

        // sample times in units of 1/f_d: the spread estimate uses the first 8, the stationarity
        // check compares lag tau at two different starting times
        const double fd_unit = f_d > 0.0 ? 1.0 / f_d : 1.0;
        const double tau = 0.1 * fd_unit, t1 = 0.37 * fd_unit, t2 = 7.1 * fd_unit;
        std::vector<double> times;
        for (int j = 0; j < 8; ++j)
            times.push_back(20.0 * j * fd_unit);
        const size_t spread_times = times.size();
        for (double t : {t1, t1 + tau, t2, t2 + tau})
            times.push_back(t);
        const arma::uword T = times.size();

        std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
        std::vector<double> X(trials), Y(trials);
        std::vector<std::complex<double>> lag1(trials), lag2(trials);
        arma::cx_vec a(P), b(Q);
        arma::cx_mat U(Q, T), UC(Q, T);
        for (int n = 0; n < trials; ++n)
        {
            for (arma::uword p = 0; p < P; ++p)
                a(p) = std::polar(1.0 / std::sqrt(static_cast<double>(P)), phase(rng));
            for (arma::uword i = 0; i < Q; ++i)
                b(i) = std::polar(1.0, -phase(rng));
            for (arma::uword j = 0; j < T; ++j)
                for (arma::uword i = 0; i < Q; ++i)
                {
                    U(i, j) = b(i) * std::polar(1.0, -omega_d * cb(i) * times[j]);
                    UC(i, j) = cb(i) * U(i, j);
                }
            const arma::cx_mat V = G * U, VC = G * UC;

            std::vector<std::complex<double>> g(T), dg(T);
            for (arma::uword j = 0; j < T; ++j)
            {
                std::complex<double> s = 0.0, ds = 0.0;
                for (arma::uword p = 0; p < P; ++p)
                {
                    const std::complex<double> ap = a(p) * std::polar(1.0, omega_d * cp(p) * times[j]);
                    s += ap * V(p, j);
                    ds += ap * (cp(p) * V(p, j) - VC(p, j));
                }
                g[j] = E0 * s;
                dg[j] = E0 * std::complex<double>(0.0, omega_d) * ds;
            }
            double x = 0.0, y = 0.0;
            for (size_t j = 0; j < spread_times; ++j)
            {
                x += std::norm(dg[j]);
                y += std::norm(g[j]);
            }
            X[n] = x / spread_times;
            Y[n] = y / spread_times;
            lag1[n] = g[spread_times + 1] * std::conj(g[spread_times]);
            lag2[n] = g[spread_times + 3] * std::conj(g[spread_times + 2]);
        }

        EmpiricalSpread out;
        out.trials = trials;
        const double mx = arma::mean(arma::vec(X)), my = arma::mean(arma::vec(Y));
        const double rho = mx / my;
        out.sigma = std::sqrt(rho);

        // delta method for the ratio of means, mapped through the square root
        double vxx = 0.0, vyy = 0.0, vxy = 0.0;
        for (int n = 0; n < trials; ++n)
        {
            vxx += (X[n] - mx) * (X[n] - mx);
            vyy += (Y[n] - my) * (Y[n] - my);
            vxy += (X[n] - mx) * (Y[n] - my);
        }
        vxx /= trials - 1;
        vyy /= trials - 1;
        vxy /= trials - 1;
        const double var_rho = std::max(0.0, (vxx - 2.0 * rho * vxy + rho * rho * vyy) / (my * my * trials));
        double half = out.sigma > 0.0 ? 1.96 * std::sqrt(var_rho) / (2.0 * out.sigma) : 0.0;
        if (trials < 100)
        {
            out.widened = true;
            half *= 2.0;
        }
        out.ci95_low = std::max(0.0, out.sigma - half);
        out.ci95_high = out.sigma + half;

        std::complex<double> mean_gap = 0.0;
        for (int n = 0; n < trials; ++n)
            mean_gap += lag1[n] - lag2[n];
        mean_gap /= static_cast<double>(trials);
        double spread_gap = 0.0;
        for (int n = 0; n < trials; ++n)
            spread_gap += std::norm(lag1[n] - lag2[n] - mean_gap);
        spread_gap /= trials - 1;
        out.stationarity_gap = std::abs(mean_gap) / my;
        out.stationarity_sigma = std::sqrt(spread_gap / trials) / my;
        return out;
    }

    JakesReference jakes_reference_spread(double f_d, const std::vector<double> &omega_grid)
    {
        if (!(f_d > 0.0))
            throw domain_error("jakes_reference_spread: f_d must be positive");
        const double omega_d = 2.0 * pi * f_d;
        JakesReference j;
        j.psd.omega = omega_grid;
        j.psd.density.resize(omega_grid.size());
        for (size_t k = 0; k < omega_grid.size(); ++k)
        {
            const double w = omega_grid[k];
            j.psd.density[k] = std::abs(w) < omega_d ? 1.0 / (pi * std::sqrt(omega_d * omega_d - w * w)) : 0.0;
        }
        // omega = omega_d sin(phi) removes the edge singularities
        static const GaussLegendre rule(32);
        const double m0 = rule.integrate([](double) { return 1.0 / pi; }, -0.5 * pi, 0.5 * pi);
        const double m2 = rule.integrate(
            [omega_d](double phi)
            {
                const double w = omega_d * std::sin(phi);
                return w * w / pi;
            },
            -0.5 * pi, 0.5 * pi);
        j.spread = std::sqrt(m2 / m0);
        return j;
    }
}
