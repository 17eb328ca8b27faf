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

#include "dopcomp/channel_model.hpp"
#include "dopcomp/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dopcomp
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        void check_shapes(const ChannelRealization &real, const arma::cx_mat &tx, const ArraySpec &tx_spec)
        {
            if (tx.n_rows != static_cast<arma::uword>(tx_spec.num_elements))
                throw contract_error("apply_channel: tx has " + std::to_string(tx.n_rows) + " rows, array has " +
                                     std::to_string(tx_spec.num_elements) + " elements");
            for (const auto &tap : real.taps)
                if (tap.delay < 0 || static_cast<arma::uword>(tap.delay) > tx.n_cols)
                    throw contract_error("apply_channel: tap delay " + std::to_string(tap.delay) +
                                         " exceeds the " + std::to_string(tx.n_cols) + "-sample input");
        }

        // exp(j psi) for element n at angle theta, psi = 2 pi n (d/lambda) cos(theta)
        std::complex<double> element_phase(const ArraySpec &spec, int n, double theta)
        {
            return std::polar(1.0, 2.0 * pi * n * spec.d_over_lambda * std::cos(theta));
        }
    }

    size_t ChannelRealization::num_paths() const
    {
        size_t n = 0;
        for (const auto &tap : taps)
            n += tap.paths.size();
        return n;
    }

    ChannelRealization draw_realization(const SystemConfig &cfg, std::mt19937_64 &rng)
    {
        cfg.validate();
        ChannelRealization real;
        real.max_dfo_hz = cfg.max_dfo_hz;
        real.sample_period_s = cfg.sample_period_s;

        std::uniform_real_distribution<double> angle(0.0, pi);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
        const auto powers = cfg.tap_powers();

        real.taps.resize(static_cast<size_t>(cfg.num_taps));
        for (int l = 0; l < cfg.num_taps; ++l)
        {
            Tap &tap = real.taps[l];
            tap.delay = cfg.tap_delays[l];
            tap.paths.resize(static_cast<size_t>(cfg.paths_per_tap));
            const double amplitude = std::sqrt(powers[l] / cfg.paths_per_tap);
            for (auto &p : tap.paths)
            {
                p.aod = angle(rng);
                p.aoa = angle(rng);
                p.alpha = std::polar(amplitude, phase(rng));
            }
        }
        refresh_dfo(real);
        return real;
    }

    void refresh_dfo(ChannelRealization &real)
    {
        for (auto &tap : real.taps)
            for (auto &p : tap.paths)
                p.dfo_hz = real.max_dfo_hz * std::cos(p.aod);
    }

    std::complex<double> tap_gain(const Tap &tap, long n, int tx_index, int rx_index,
                                  const ArraySpec &tx_spec, const ArraySpec &rx_spec,
                                  double max_dfo_hz, double sample_period_s)
    {
        if (tx_index < 0 || tx_index >= tx_spec.num_elements || rx_index < 0 || rx_index >= rx_spec.num_elements)
            throw contract_error("tap_gain: antenna index out of range");
        std::complex<double> g = 0.0;
        for (const auto &p : tap.paths)
        {
            const double doppler = 2.0 * pi * max_dfo_hz * std::cos(p.aod) * static_cast<double>(n) * sample_period_s;
            g += p.alpha * std::polar(1.0, doppler) * element_phase(tx_spec, tx_index, p.aod) *
                 element_phase(rx_spec, rx_index, p.aoa);
        }
        return g;
    }

    arma::cx_mat apply_channel(const ChannelRealization &real, const arma::cx_mat &tx, long frame_offset,
                               const ArraySpec &tx_spec, const ArraySpec &rx_spec)
    {
        check_shapes(real, tx, tx_spec);
        const arma::uword T = tx.n_cols;
        const int M = tx_spec.num_elements, N = rx_spec.num_elements;
        arma::cx_mat y(N, T, arma::fill::zeros);

        for (const auto &tap : real.taps)
        {
            const size_t P = tap.paths.size();
            // per-path factors of g, tabulated once so the antenna-pair loop is a plain sum
            arma::cx_mat ramp(P, T), txp(P, M), rxp(P, N);
            for (size_t q = 0; q < P; ++q)
            {
                const auto &p = tap.paths[q];
                const double w = 2.0 * pi * real.max_dfo_hz * std::cos(p.aod) * real.sample_period_s;
                for (arma::uword c = 0; c < T; ++c)
                    ramp(q, c) = p.alpha * std::polar(1.0, w * static_cast<double>(frame_offset + static_cast<long>(c) - tap.delay));
                for (int m = 0; m < M; ++m)
                    txp(q, m) = element_phase(tx_spec, m, p.aod);
                for (int r = 0; r < N; ++r)
                    rxp(q, r) = element_phase(rx_spec, r, p.aoa);
            }

            for (int r = 0; r < N; ++r)
                for (int m = 0; m < M; ++m)
                    for (arma::uword c = static_cast<arma::uword>(tap.delay); c < T; ++c)
                    {
                        std::complex<double> g = 0.0;
                        for (size_t q = 0; q < P; ++q)
                            g += ramp(q, c) * txp(q, m) * rxp(q, r);
                        y(r, c) += g * tx(m, c - tap.delay);
                    }
        }
        return y;
    }

    arma::cx_mat apply_channel_factored(const ChannelRealization &real, const arma::cx_mat &tx, long frame_offset,
                                        const ArraySpec &tx_spec, const ArraySpec &rx_spec)
    {
        check_shapes(real, tx, tx_spec);
        const arma::uword T = tx.n_cols;
        const int N = rx_spec.num_elements;
        arma::cx_mat y(N, T, arma::fill::zeros);

        for (const auto &tap : real.taps)
        {
            const size_t P = tap.paths.size();
            const arma::uword d = static_cast<arma::uword>(tap.delay);
            if (d >= T)
                continue;

            // a_t^T(theta_q) x(c), one row per path
            arma::cx_mat steer(P, tx_spec.num_elements);
            for (size_t q = 0; q < P; ++q)
                steer.row(q) = steering_vector(tx_spec, tap.paths[q].aod).st();
            const arma::cx_mat projected = steer * tx.cols(0, T - 1 - d);

            arma::cx_mat weighted(P, T - d);
            for (size_t q = 0; q < P; ++q)
            {
                const auto &p = tap.paths[q];
                const double w = 2.0 * pi * real.max_dfo_hz * std::cos(p.aod) * real.sample_period_s;
                for (arma::uword c = d; c < T; ++c)
                    weighted(q, c - d) = p.alpha * std::polar(1.0, w * static_cast<double>(frame_offset + static_cast<long>(c) - tap.delay)) *
                                         projected(q, c - d);
            }

            arma::cx_mat rxp(N, P);
            for (size_t q = 0; q < P; ++q)
                rxp.col(q) = steering_vector(rx_spec, tap.paths[q].aoa);
            y.cols(d, T - 1) += rxp * weighted;
        }
        return y;
    }
}
