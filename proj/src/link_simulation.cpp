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

#include "dopcomp/link_simulation.hpp"
#include "dopcomp/channel_model.hpp"
#include "dopcomp/errors.hpp"
#include "dopcomp/ofdm_phy.hpp"
#include "dopcomp/seeding.hpp"
#include "dopcomp/tx_beam_network.hpp"

#include <algorithm>
#include <cmath>

namespace dopcomp
{
    std::string scheme_name(Scheme s)
    {
        switch (s)
        {
        case Scheme::proposed:
            return "proposed";
        case Scheme::conventional_dfo:
            return "conventional_dfo";
        case Scheme::conventional_nodfo:
            return "conventional_nodfo";
        }
        return "unknown";
    }

    Scheme parse_scheme(const std::string &name)
    {
        for (Scheme s : {Scheme::proposed, Scheme::conventional_dfo, Scheme::conventional_nodfo})
            if (name == scheme_name(s))
                return s;
        throw config_error("unknown scheme '" + name + "' (expected proposed, conventional_dfo or conventional_nodfo)");
    }

    FrameTrace trace_frame(const SystemConfig &cfg, Scheme scheme, const NoiseSpec &noise, std::mt19937_64 &rng)
    {
        const QamConstellation qam(cfg.qam_order);
        const ArraySpec tx = cfg.tx_array();
        const ArraySpec rx = cfg.rx_array();

        FrameTrace t;
        t.channel = draw_realization(cfg, rng);
        if (scheme == Scheme::conventional_nodfo)
        {
            t.channel.max_dfo_hz = 0.0;
            refresh_dfo(t.channel);
        }
        t.network = build_network(build_beam_grid(cfg.beam_spacing_deg), tx, rng);
        t.frame = make_frame(cfg, qam, rng);
        const arma::cx_vec samples = frame_samples(t.frame, cfg);

        const double comp_hz = scheme == Scheme::proposed ? cfg.max_dfo_hz : 0.0;
        t.received = add_awgn(propagate_beamformed(samples, t.network, t.channel, rx, cfg, comp_hz), noise, rng);

        const int ns = cfg.symbol_length();
        auto block_rx = [&](int m)
        {
            arma::cx_mat Y(rx.num_elements, cfg.num_subcarriers);
            for (int r = 0; r < rx.num_elements; ++r)
            {
                const arma::cx_vec part = t.received.row(r).subvec(m * ns, (m + 1) * ns - 1).st();
                Y.row(r) = ofdm_demodulate(part, cfg).st();
            }
            return Y;
        };

        t.estimate = ls_estimate(block_rx(0), t.frame.blocks[0]);
        for (int m = 1; m < cfg.blocks_per_frame; ++m)
        {
            const MrcOutput eq = mrc_detect(block_rx(m), t.estimate);
            const auto &truth = t.frame.data_indices[m - 1];
            for (int k = 0; k < cfg.num_subcarriers; ++k)
            {
                const int decided = eq.erased[k] ? -1 : qam.decide(eq.symbols(k)); // erasures count as errors
                t.outcome.symbol_errors += decided != truth[k];
            }
            t.outcome.symbols += truth.size();
        }
        return t;
    }

    FrameOutcome simulate_frame(const SystemConfig &cfg, Scheme scheme, const NoiseSpec &noise, std::mt19937_64 &rng)
    {
        return trace_frame(cfg, scheme, noise, rng).outcome;
    }

    SerPoint run_ser_point(const SystemConfig &cfg, Scheme scheme, double snr_db, int frames, const std::string &stream)
    {
        if (frames < 1)
            throw contract_error("run_ser_point: need at least one frame");
        SerPoint pt;
        pt.frames = frames;
        const NoiseSpec noise{snr_db};
        double sum = 0.0, sum_sq = 0.0;
        for (int f = 0; f < frames; ++f)
        {
            auto rng = trial_rng(cfg.master_seed, stream, static_cast<std::uint64_t>(f));
            const FrameOutcome o = simulate_frame(cfg, scheme, noise, rng);
            pt.errors += o.symbol_errors;
            pt.symbols += o.symbols;
            const double r = static_cast<double>(o.symbol_errors) / static_cast<double>(o.symbols);
            sum += r;
            sum_sq += r * r;
        }
        pt.ser = static_cast<double>(pt.errors) / static_cast<double>(pt.symbols);
        if (frames > 1)
        {
            const double mean = sum / frames;
            const double var = std::max(0.0, (sum_sq - frames * mean * mean) / (frames - 1));
            pt.ci95 = 1.96 * std::sqrt(var / frames);
        }
        return pt;
    }
}
