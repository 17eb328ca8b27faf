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

#ifndef dopcomp_link_simulation_H
#define dopcomp_link_simulation_H

#include <cstdint>
#include <random>
#include <string>

#include "dopcomp/channel_model.hpp"
#include "dopcomp/ofdm_phy.hpp"
#include "dopcomp/system_config.hpp"
#include "dopcomp/tx_beam_network.hpp"
#include "dopcomp/uplink_receiver.hpp"

namespace dopcomp
{
    enum class Scheme
    {
        proposed,           // beam network with per-branch Doppler pre-compensation
        conventional_dfo,   // beam network, no compensation, Doppler present
        conventional_nodfo, // beam network, no compensation, static channel
    };

    std::string scheme_name(Scheme s);
    Scheme parse_scheme(const std::string &name); // throws config_error

    struct FrameOutcome
    {
        std::size_t symbol_errors = 0;
        std::size_t symbols = 0;
    };

    // Everything drawn and computed for one frame, for inspection by checks
    struct FrameTrace
    {
        ChannelRealization channel;
        BeamNetwork network;
        OfdmFrame frame;
        arma::cx_mat received;    // N x (N_b N_s), after noise
        ChannelEstimate estimate; // LS on block 0
        FrameOutcome outcome;
    };

    // One frame through transmitter, channel, noise and the LS/MRC receiver.
    // Draw order from rng: channel, branch phases, data symbols, noise.
    FrameTrace trace_frame(const SystemConfig &cfg, Scheme scheme, const NoiseSpec &noise, std::mt19937_64 &rng);
    FrameOutcome simulate_frame(const SystemConfig &cfg, Scheme scheme, const NoiseSpec &noise, std::mt19937_64 &rng);

    struct SerPoint
    {
        double ser = 0.0;
        double ci95 = 0.0; // half width, normal approximation on the per-frame error counts
        std::size_t errors = 0;
        std::size_t symbols = 0;
        int frames = 0;
    };

    // Frames seeded by (cfg.master_seed, stream, frame index). Using the same stream across schemes,
    // array sizes and SNRs gives common random numbers for the comparisons.
    SerPoint run_ser_point(const SystemConfig &cfg, Scheme scheme, double snr_db, int frames,
                           const std::string &stream = "ser");
}

#endif
