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
#include "dopcomp/ofdm_phy.hpp"
#include "dopcomp/uplink_receiver.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace dopcomp;
using Catch::Matchers::WithinRel;

namespace
{
    arma::cx_mat random_matrix(int r, int c, std::mt19937_64 &rng)
    {
        std::normal_distribution<double> g;
        arma::cx_mat x(r, c);
        for (auto &v : x)
            v = {g(rng), g(rng)};
        return x;
    }
}

TEST_CASE("noise injection", "[uplink_receiver]")
{
    std::mt19937_64 rng(21);
    const arma::cx_mat s = random_matrix(4, 50000, rng);
    double var = -1.0;
    CHECK(arma::abs(add_awgn(s, NoiseSpec{}, rng, &var) - s).max() == 0.0);
    CHECK(var == 0.0);

    const arma::cx_mat zero(4, 100, arma::fill::zeros);
    CHECK_THROWS_AS(add_awgn(zero, NoiseSpec{10.0}, rng), config_error);
    CHECK_THROWS_AS(add_awgn(s, NoiseSpec{std::numeric_limits<double>::quiet_NaN()}, rng), config_error);

    const arma::cx_mat y = add_awgn(s, NoiseSpec{0.0}, rng, &var);
    const double signal = arma::accu(arma::square(arma::abs(s))) / s.n_elem;
    const double noise = arma::accu(arma::square(arma::abs(y - s))) / s.n_elem;
    CHECK_THAT(var, WithinRel(signal, 1e-12));
    CHECK_THAT(noise, WithinRel(signal, 0.01));
}

TEST_CASE("least-squares estimate", "[uplink_receiver]")
{
    std::mt19937_64 rng(22);
    const arma::cx_mat H = random_matrix(4, 64, rng);
    const arma::cx_vec X = random_matrix(64, 1, rng);
    arma::cx_mat Y = H.each_row() % X.st();
    CHECK(arma::abs(ls_estimate(Y, X).H - H).max() < 1e-10);

    const arma::cx_mat same = X.st();
    CHECK(arma::abs(ls_estimate(same, X).H - 1.0).max() < 1e-15);

    arma::cx_vec bad = X;
    bad(5) = 0.0;
    CHECK_THROWS_AS(ls_estimate(Y, bad), contract_error);
    CHECK_THROWS_AS(ls_estimate(Y.cols(0, 9), X), contract_error);
}

TEST_CASE("maximum ratio combining", "[uplink_receiver]")
{
    std::mt19937_64 rng(23);
    const arma::cx_mat Y1 = random_matrix(1, 32, rng);
    const auto unit = mrc_detect(Y1, ChannelEstimate{arma::cx_mat(1, 32, arma::fill::ones)});
    CHECK(arma::abs(unit.symbols - Y1.st()).max() < 1e-15);

    const arma::cx_mat H = random_matrix(4, 32, rng);
    const arma::cx_vec x = random_matrix(32, 1, rng);
    const arma::cx_mat Y = H.each_row() % x.st();
    const auto out = mrc_detect(Y, ChannelEstimate{H});
    CHECK(arma::abs(out.symbols - x).max() < 1e-12);
    for (bool e : out.erased)
        CHECK_FALSE(e);

    arma::cx_mat Hz = H;
    Hz.col(7).zeros();
    const auto erased = mrc_detect(Y, ChannelEstimate{Hz});
    CHECK(erased.erased[7]);
    CHECK(erased.symbols(7) == 0.0);
}

TEST_CASE("combining gain over a single branch", "[uplink_receiver]")
{
    std::mt19937_64 rng(24);
    const int K = 20000;
    const arma::cx_mat H = random_matrix(4, K, rng) / std::sqrt(2.0);
    const QamConstellation qam(16);
    std::uniform_int_distribution<int> idx(0, 15);
    arma::cx_vec x(K);
    for (auto &v : x)
        v = qam.points()[idx(rng)];
    const arma::cx_mat clean = H.each_row() % x.st();
    const arma::cx_mat Y = add_awgn(clean, NoiseSpec{30.0}, rng);
    const auto combined = mrc_detect(Y, ChannelEstimate{H});
    const auto single = mrc_detect(Y.row(0), ChannelEstimate{H.row(0)});
    const double mse_comb = arma::mean(arma::square(arma::abs(combined.symbols - x)));
    const double mse_single = arma::mean(arma::square(arma::abs(single.symbols - x)));
    CHECK(mse_comb < mse_single);
}

TEST_CASE("symbol error rate counting", "[uplink_receiver]")
{
    const std::vector<int> truth(1000, 3);
    CHECK(measure_ser(truth, truth) == 0.0);
    auto one = truth;
    one[10] = 4;
    CHECK(measure_ser(one, truth) == 0.001);

    std::mt19937_64 rng(25);
    std::uniform_int_distribution<int> idx(0, 15);
    std::vector<int> a(200000), b(200000);
    for (size_t k = 0; k < a.size(); ++k)
        a[k] = idx(rng), b[k] = idx(rng);
    CHECK(std::abs(measure_ser(a, b) - 15.0 / 16.0) < 0.005);

    CHECK_THROWS_AS(measure_ser(std::vector<int>(3), std::vector<int>(4)), contract_error);
    CHECK_THROWS_AS(measure_ser(std::vector<int>{}, std::vector<int>{}), contract_error);
}
