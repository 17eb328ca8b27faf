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

#include "dopcomp/channel_model.hpp"
#include "dopcomp/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace dopcomp;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    constexpr double pi = std::numbers::pi;

    ChannelRealization single_path(int delay, double aod, double aoa, std::complex<double> alpha, double f_d)
    {
        ChannelRealization r;
        r.max_dfo_hz = f_d;
        r.sample_period_s = SystemConfig{}.sample_period_s;
        r.taps = {Tap{delay, {PathParams{alpha, aod, aoa, 0.0}}}};
        refresh_dfo(r);
        return r;
    }

    arma::cx_mat random_signal(int rows, int cols, std::mt19937_64 &rng)
    {
        std::normal_distribution<double> g;
        arma::cx_mat x(rows, cols);
        for (auto &v : x)
            v = {g(rng), g(rng)};
        return x;
    }
}

TEST_CASE("default draw has 6 taps, 384 paths and unit power", "[channel_model]")
{
    const SystemConfig cfg;
    std::mt19937_64 rng(1);
    const auto real = draw_realization(cfg, rng);
    REQUIRE(real.taps.size() == 6);
    CHECK(real.num_paths() == 384);
    double power = 0.0;
    for (const auto &tap : real.taps)
        for (const auto &p : tap.paths)
        {
            power += std::norm(p.alpha);
            CHECK((p.aod > 0.0 && p.aod < pi && p.aoa > 0.0 && p.aoa < pi));
            CHECK_THAT(p.dfo_hz, WithinAbs(cfg.max_dfo_hz * std::cos(p.aod), 1e-12));
            CHECK(std::abs(p.dfo_hz) <= cfg.max_dfo_hz);
        }
    CHECK_THAT(power, WithinRel(1.0, 1e-12));
    CHECK(real.taps[0].delay == 0);
    CHECK(real.taps[5].delay == 16);
}

TEST_CASE("draws are reproducible from the seed", "[channel_model]")
{
    const SystemConfig cfg;
    std::mt19937_64 a(42), b(42);
    const auto ra = draw_realization(cfg, a), rb = draw_realization(cfg, b);
    for (size_t l = 0; l < ra.taps.size(); ++l)
        for (size_t q = 0; q < ra.taps[l].paths.size(); ++q)
        {
            CHECK(ra.taps[l].paths[q].alpha == rb.taps[l].paths[q].alpha);
            CHECK(ra.taps[l].paths[q].aod == rb.taps[l].paths[q].aod);
            CHECK(ra.taps[l].paths[q].aoa == rb.taps[l].paths[q].aoa);
        }
}

TEST_CASE("invalid delay profiles are configuration errors", "[channel_model]")
{
    SystemConfig cfg;
    cfg.tap_delays = {0, 3, 6, 9, 12, 17};
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(draw_realization(cfg, rng), config_error);
}

TEST_CASE("tap gain examples", "[channel_model]")
{
    const auto tx = ArraySpec::make(4, 0.45), rx = ArraySpec::make(2, 0.45);
    const std::complex<double> alpha = std::polar(0.7, 1.2);
    const auto still = single_path(0, pi / 2, 1.0, alpha, 1000.0);
    CHECK(still.taps[0].paths[0].dfo_hz == Catch::Approx(0.0).margin(1e-12));
    const auto g0 = tap_gain(still.taps[0], 0, 2, 1, tx, rx, 1000.0, still.sample_period_s);
    const auto g1 = tap_gain(still.taps[0], 12345, 2, 1, tx, rx, 1000.0, still.sample_period_s);
    CHECK(std::abs(g0 - g1) < 1e-12);

    const auto moving = single_path(0, 0.6, 1.0, alpha, 1000.0);
    const long n = 77;
    const auto g = tap_gain(moving.taps[0], n, 0, 0, tx, rx, 1000.0, moving.sample_period_s);
    const auto expect = alpha * std::polar(1.0, 2.0 * pi * 1000.0 * n * moving.sample_period_s * std::cos(0.6));
    CHECK(std::abs(g - expect) < 1e-14);
    CHECK_THROWS_AS(tap_gain(moving.taps[0], 0, 4, 0, tx, rx, 1000.0, 1e-6), contract_error);
}

TEST_CASE("tap gain matches the 64-term direct sum", "[channel_model]")
{
    const SystemConfig cfg;
    std::mt19937_64 rng(3);
    const auto real = draw_realization(cfg, rng);
    const auto tx = cfg.tx_array(), rx = cfg.rx_array();
    const Tap &tap = real.taps[2];
    REQUIRE(tap.paths.size() == 64);
    const long n = 100;
    const int nt = 17, nr = 3;
    std::complex<double> sum = 0.0;
    for (const auto &p : tap.paths)
    {
        const double phase = 2.0 * pi * cfg.max_dfo_hz * n * cfg.sample_period_s * std::cos(p.aod) +
                             2.0 * pi * nt * tx.d_over_lambda * std::cos(p.aod) +
                             2.0 * pi * nr * rx.d_over_lambda * std::cos(p.aoa);
        sum += p.alpha * std::polar(1.0, phase);
    }
    CHECK(std::abs(tap_gain(tap, n, nt, nr, tx, rx, cfg.max_dfo_hz, cfg.sample_period_s) - sum) < 1e-12);
}

TEST_CASE("identity channel and pure delay", "[channel_model]")
{
    std::mt19937_64 rng(4);
    const ArraySpec one{1, 0.45};
    const arma::cx_mat x = random_signal(1, 50, rng);

    const auto identity = single_path(0, 1.0, 1.0, 1.0, 0.0);
    CHECK(arma::abs(apply_channel(identity, x, 0, one, one) - x).max() == 0.0);

    const auto delayed = single_path(3, 1.0, 1.0, 1.0, 0.0);
    const arma::cx_mat y = apply_channel(delayed, x, 0, one, one);
    CHECK(arma::abs(y.cols(0, 2)).max() == 0.0);
    CHECK(arma::abs(y.cols(3, 49) - x.cols(0, 46)).max() == 0.0);
}

TEST_CASE("direct and factored channel application agree", "[channel_model]")
{
    SystemConfig cfg;
    cfg.tx_antennas = 16; // the direct form is O(M N L N_p T)
    std::mt19937_64 rng(5);
    const auto real = draw_realization(cfg, rng);
    const arma::cx_mat x = random_signal(cfg.tx_antennas, cfg.frame_length(), rng);
    const auto direct = apply_channel(real, x, -cfg.cp_length, cfg.tx_array(), cfg.rx_array());
    const auto factored = apply_channel_factored(real, x, -cfg.cp_length, cfg.tx_array(), cfg.rx_array());
    CHECK(arma::abs(direct - factored).max() < 1e-10);

    CHECK_THROWS_AS(apply_channel(real, x.rows(0, 7), 0, cfg.tx_array(), cfg.rx_array()), contract_error);
    CHECK_THROWS_AS(apply_channel_factored(real, x.cols(0, 9), 0, cfg.tx_array(), cfg.rx_array()), contract_error);
}

TEST_CASE("tap power is stationary and the autocorrelation follows J0", "[channel_model]")
{
    const SystemConfig cfg;
    const auto tx = cfg.tx_array(), rx = cfg.rx_array();
    const int trials = 10000;
    const long lag = 360; // 0.25 ms
    const long t_late = 5000;
    double p0 = 0.0, p1 = 0.0, p0_sq = 0.0;
    std::complex<double> corr = 0.0;
    for (int t = 0; t < trials; ++t)
    {
        std::mt19937_64 rng(1000 + t);
        const auto real = draw_realization(cfg, rng);
        const Tap &tap = real.taps[0];
        const auto a = tap_gain(tap, 0, 0, 0, tx, rx, cfg.max_dfo_hz, cfg.sample_period_s);
        const auto b = tap_gain(tap, t_late, 0, 0, tx, rx, cfg.max_dfo_hz, cfg.sample_period_s);
        const auto c = tap_gain(tap, lag, 0, 0, tx, rx, cfg.max_dfo_hz, cfg.sample_period_s);
        p0 += std::norm(a);
        p0_sq += std::norm(a) * std::norm(a);
        p1 += std::norm(b);
        corr += c * std::conj(a);
    }
    p0 /= trials;
    p1 /= trials;
    corr /= static_cast<double>(trials);
    const double se = std::sqrt((p0_sq / trials - p0 * p0) / trials);
    const double tap_power = 1.0 / 6.0;
    CHECK(std::abs(p0 - tap_power) < 4.0 * se);
    CHECK(std::abs(p1 - p0) < 6.0 * se);
    const double jakes = tap_power * std::cyl_bessel_j(0.0, 2.0 * pi * cfg.max_dfo_hz * lag * cfg.sample_period_s);
    CHECK(std::abs(corr.real() - jakes) < 6.0 * se);
}
