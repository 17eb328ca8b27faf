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

#include "dopcomp/array_geometry.hpp"
#include "dopcomp/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dopcomp
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        void check_angle(double theta, const char *name)
        {
            if (!(theta >= 0.0 && theta <= pi))
                throw domain_error(std::string(name) + " must lie in [0, pi], got " + std::to_string(theta));
        }
    }

    ArraySpec ArraySpec::make(int num_elements, double d_over_lambda)
    {
        if (num_elements < 2)
            throw domain_error("ArraySpec: need at least 2 elements, got " + std::to_string(num_elements));
        if (!(d_over_lambda > 0.0 && d_over_lambda < 0.5))
            throw domain_error("ArraySpec: d/lambda must lie in (0, 0.5), got " + std::to_string(d_over_lambda));
        return ArraySpec{num_elements, d_over_lambda};
    }

    arma::cx_vec steering_vector(const ArraySpec &spec, double theta)
    {
        check_angle(theta, "steering_vector: theta");
        arma::cx_vec a(spec.num_elements);
        const double step = 2.0 * pi * spec.d_over_lambda * std::cos(theta);
        for (int n = 0; n < spec.num_elements; ++n)
            a(n) = std::polar(1.0, step * n);
        return a;
    }

    double antenna_gain_y(int num_elements, double d_over_lambda, double y)
    {
        if (std::abs(y) < 1e-12)
            return 1.0;
        const double x = pi * d_over_lambda * y;
        return std::sin(num_elements * x) / (num_elements * std::sin(x));
    }

    double antenna_gain(const ArraySpec &spec, double theta, double theta_tilde)
    {
        check_angle(theta, "antenna_gain: theta");
        check_angle(theta_tilde, "antenna_gain: theta_tilde");
        return antenna_gain_y(spec.num_elements, spec.d_over_lambda, std::cos(theta_tilde) - std::cos(theta));
    }

    std::complex<double> array_response(const ArraySpec &spec, double theta_beam, double theta_path)
    {
        const double y = std::cos(theta_path) - std::cos(theta_beam);
        const double M = spec.num_elements;
        const double amplitude = M * antenna_gain_y(spec.num_elements, spec.d_over_lambda, y);
        return std::polar(amplitude, pi * (M - 1.0) * spec.d_over_lambda * y);
    }

    BeamGrid build_beam_grid(double spacing_deg)
    {
        if (!(spacing_deg > 0.0))
            throw domain_error("build_beam_grid: spacing must be positive, got " + std::to_string(spacing_deg));
        const double bins = 180.0 / spacing_deg;
        const double q = std::round(bins);
        if (q < 1.0 || std::abs(bins - q) > 1e-9 * bins)
            throw domain_error("build_beam_grid: spacing " + std::to_string(spacing_deg) + " deg does not divide 180");

        BeamGrid grid;
        grid.spacing_rad = spacing_deg * pi / 180.0;
        grid.angles.resize(static_cast<size_t>(q));
        for (size_t i = 0; i < grid.angles.size(); ++i)
            grid.angles[i] = (static_cast<double>(i) + 0.5) * grid.spacing_rad;
        return grid;
    }
}
