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

#include "dopcomp/errors.hpp"
#include "dopcomp/quadrature.hpp"
#include "dopcomp/special_functions.hpp"

#include <cmath>
#include <numbers>

using namespace dopcomp;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    constexpr double pi = std::numbers::pi;
}

TEST_CASE("Gauss-Legendre is exact for polynomials of degree 2n - 1", "[numerics]")
{
    const GaussLegendre gl(8);
    double wsum = 0.0;
    for (double w : gl.weights)
        wsum += w;
    CHECK_THAT(wsum, WithinRel(2.0, 1e-15));
    CHECK_THAT(gl.integrate([](double x) { return std::pow(x, 15) + 3.0 * std::pow(x, 14); }, -1.0, 2.0),
               WithinRel((std::pow(2.0, 16) - 1.0) / 16.0 + 3.0 * (std::pow(2.0, 15) + 1.0) / 15.0, 1e-13));
    const GaussLegendre g32(32);
    CHECK_THAT(g32.integrate([](double x) { return std::exp(x); }, 0.0, 1.0), WithinRel(std::exp(1.0) - 1.0, 1e-15));
}

TEST_CASE("adaptive quadrature on smooth, peaked and singular integrands", "[numerics]")
{
    CHECK_THAT(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, pi).value, WithinRel(2.0, 1e-12));
    CHECK_THAT(integrate_adaptive([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0).value,
               WithinRel(2.0 / 1e-2 * std::atan(1.0 / 1e-2), 1e-10));
    CHECK_THAT(integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-8, 0.0, 5000).value,
               WithinRel(2.0, 1e-7));
    const auto c = integrate_adaptive_complex([](double x) { return std::polar(1.0, 3.0 * x); }, 0.0, 1.0);
    CHECK(std::abs(c - std::complex<double>(std::sin(3.0) / 3.0, (1.0 - std::cos(3.0)) / 3.0)) < 1e-12);
}

TEST_CASE("adaptive quadrature reports non-convergence with the worst interval", "[numerics]")
{
    try
    {
        integrate_adaptive([](double x) { return std::sin(1.0 / x); }, 1e-9, 1.0, 1e-14, 0.0, 20);
        FAIL("expected quadrature_error");
    }
    catch (const quadrature_error &e)
    {
        CHECK(e.interval_lo < e.interval_hi);
        CHECK(e.error_estimate > 0.0);
    }
}

TEST_CASE("complete elliptic integral", "[numerics]")
{
    CHECK_THAT(elliptic_K(0.0), WithinAbs(pi / 2.0, 1e-15));
    CHECK_THAT(elliptic_K(0.3), WithinAbs(elliptic_K_series(0.3, 20), 1e-12));

    const double mu = 0.999;
    const double oracle = integrate_adaptive([mu](double x) { return 1.0 / std::sqrt(1.0 - mu * mu * std::pow(std::sin(x), 2)); },
                                             0.0, pi / 2.0, 1e-13)
                              .value;
    CHECK_THAT(elliptic_K(mu), WithinRel(oracle, 1e-9));

    // complementary form near the logarithmic singularity
    const double kp = 1e-6;
    CHECK_THAT(elliptic_K_complement(kp), WithinRel(std::log(4.0 / kp), 1e-10));
    CHECK_THAT(elliptic_K_complement(std::sqrt(1.0 - 0.3 * 0.3)), WithinRel(elliptic_K(0.3), 1e-14));

    CHECK_THROWS_AS(elliptic_K(1.0), domain_error);
    CHECK_THROWS_AS(elliptic_K(-0.1), domain_error);
    CHECK_THROWS_AS(elliptic_K_complement(0.0), domain_error);
}
