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

#include "dopcomp/tx_beam_network.hpp"
#include "dopcomp/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dopcomp
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        // Per-sample phase step of the compensation for beam direction theta
        double compensation_step(double theta, double max_dfo_hz, double sample_period_s)
        {
            return 2.0 * pi * max_dfo_hz * std::cos(theta) * sample_period_s;
        }
    }

    BeamNetwork build_network(const BeamGrid &grid, const ArraySpec &spec, const std::vector<double> &phases)
    {
        if (grid.size() == 0)
            throw contract_error("build_network: empty beam grid");
        if (phases.size() != grid.size())
            throw contract_error("build_network: expected " + std::to_string(grid.size()) + " phases, got " +
                                 std::to_string(phases.size()));

        BeamNetwork net;
        net.spec = spec;
        net.branches.resize(grid.size());
        arma::cx_vec sum(spec.num_elements, arma::fill::zeros);
        for (size_t i = 0; i < grid.size(); ++i)
        {
            auto &b = net.branches[i];
            b.theta = grid.angles[i];
            b.phase = phases[i];
            b.weight = steering_vector(spec, b.theta) * std::polar(1.0, b.phase);
            sum += b.weight;
        }
        const double norm = arma::norm(sum);
        if (!(norm > 0.0))
            throw contract_error("build_network: branch phases cancel exactly, eta undefined");
        net.eta = 1.0 / norm;
        for (auto &b : net.branches)
            b.weight *= net.eta;
        return net;
    }

    BeamNetwork build_network(const BeamGrid &grid, const ArraySpec &spec, std::mt19937_64 &rng)
    {
        std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
        std::vector<double> phases(grid.size());
        for (auto &p : phases)
            p = phase(rng);
        return build_network(grid, spec, phases);
    }

    arma::cx_vec dfo_precompensate(const arma::cx_vec &samples, double theta, double max_dfo_hz, int block_index,
                                   const SystemConfig &cfg)
    {
        if (samples.n_elem != static_cast<arma::uword>(cfg.symbol_length()))
            throw contract_error("dfo_precompensate: expected " + std::to_string(cfg.symbol_length()) + " samples");
        const double step = compensation_step(theta, max_dfo_hz, cfg.sample_period_s);
        const long base = static_cast<long>(block_index) * cfg.symbol_length() - cfg.cp_length;
        arma::cx_vec out(samples.n_elem);
        for (arma::uword p = 0; p < samples.n_elem; ++p)
            out(p) = samples(p) * std::polar(1.0, -step * static_cast<double>(base + static_cast<long>(p)));
        return out;
    }

    arma::cx_mat transmit_samples(const arma::cx_vec &samples, const BeamNetwork &net, const SystemConfig &cfg,
                                  bool compensate)
    {
        if (net.spec.num_elements < 1 || net.branches.empty())
            throw contract_error("transmit_samples: network not built");
        const int ns = cfg.symbol_length();
        if (samples.n_elem % static_cast<arma::uword>(ns) != 0)
            throw contract_error("transmit_samples: length is not a whole number of blocks");
        const arma::uword T = samples.n_elem;
        const arma::uword Q = net.size();

        // branch signals as columns, superposed by one product with the conjugate weights
        arma::cx_mat branch(T, Q);
        for (arma::uword i = 0; i < Q; ++i)
        {
            const double step = compensate ? compensation_step(net.branches[i].theta, cfg.max_dfo_hz, cfg.sample_period_s) : 0.0;
            for (arma::uword c = 0; c < T; ++c)
                branch(c, i) = samples(c) * std::polar(1.0, -step * (static_cast<double>(c) - cfg.cp_length));
        }
        arma::cx_mat W(net.spec.num_elements, Q);
        for (arma::uword i = 0; i < Q; ++i)
            W.col(i) = arma::conj(net.branches[i].weight);
        return W * branch.st();
    }

    arma::cx_mat transmit_frame(const OfdmFrame &frame, const BeamNetwork &net, const SystemConfig &cfg, bool compensate)
    {
        if (frame.num_blocks() != static_cast<size_t>(cfg.blocks_per_frame))
            throw contract_error("transmit_frame: frame has " + std::to_string(frame.num_blocks()) + " blocks, config " +
                                 std::to_string(cfg.blocks_per_frame));
        return transmit_samples(frame_samples(frame, cfg), net, cfg, compensate);
    }

    arma::cx_mat propagate_beamformed(const arma::cx_vec &samples, const BeamNetwork &net,
                                      const ChannelRealization &real, const ArraySpec &rx_spec,
                                      const SystemConfig &cfg, double compensation_dfo_hz)
    {
        const arma::uword T = samples.n_elem;
        const arma::uword Q = net.size();
        const arma::uword P = real.num_paths();
        const int N = rx_spec.num_elements;
        const double offset = -static_cast<double>(cfg.cp_length);

        // compensation phasors exp(-j w_i k), k = u - N_cp for source column u
        arma::cx_mat comp(T, Q);
        for (arma::uword i = 0; i < Q; ++i)
        {
            const double step = compensation_step(net.branches[i].theta, compensation_dfo_hz, cfg.sample_period_s);
            for (arma::uword u = 0; u < T; ++u)
                comp(u, i) = std::polar(1.0, -step * (static_cast<double>(u) + offset));
        }

        // b(i, q) = w_i^H a_t(theta_q)
        arma::cx_mat beam(Q, P);
        {
            arma::uword q = 0;
            for (const auto &tap : real.taps)
                for (const auto &p : tap.paths)
                {
                    for (arma::uword i = 0; i < Q; ++i)
                        beam(i, q) = net.eta * std::polar(1.0, -net.branches[i].phase) *
                                     array_response(net.spec, net.branches[i].theta, p.aod);
                    ++q;
                }
        }
        arma::cx_mat response = comp * beam; // T x P

        arma::cx_mat y(N, T, arma::fill::zeros);
        arma::uword first = 0;
        for (const auto &tap : real.taps)
        {
            const arma::uword Pl = tap.paths.size();
            const arma::uword d = static_cast<arma::uword>(tap.delay);
            if (Pl == 0)
                continue;
            arma::cx_mat rx(Pl, N);
            for (arma::uword q = 0; q < Pl; ++q)
            {
                const auto &p = tap.paths[q];
                const double w = 2.0 * pi * real.max_dfo_hz * std::cos(p.aod) * real.sample_period_s;
                for (arma::uword u = 0; u < T; ++u)
                    response(u, first + q) *= p.alpha * std::polar(1.0, w * (static_cast<double>(u) + offset));
                rx.row(q) = steering_vector(rx_spec, p.aoa).st();
            }
            if (d < T)
            {
                // h(u, r): equivalent tap seen by receive antenna r for source sample u
                const arma::cx_mat h = response.cols(first, first + Pl - 1) * rx;
                for (arma::uword u = 0; u + d < T; ++u)
                    for (int r = 0; r < N; ++r)
                        y(r, u + d) += h(u, r) * samples(u);
            }
            first += Pl;
        }
        return y;
    }
}
