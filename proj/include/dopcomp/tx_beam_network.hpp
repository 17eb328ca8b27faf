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

#ifndef dopcomp_tx_beam_network_H
#define dopcomp_tx_beam_network_H

#include <armadillo>
#include <random>
#include <vector>

#include "dopcomp/array_geometry.hpp"
#include "dopcomp/channel_model.hpp"
#include "dopcomp/ofdm_phy.hpp"
#include "dopcomp/system_config.hpp"

namespace dopcomp
{
    struct BeamBranch
    {
        double theta = 0.0;     // beam direction, radians
        double phase = 0.0;     // phi', uniform on [0, 2 pi)
        arma::cx_vec weight;    // w = eta a_t(theta) exp(j phi')
    };

    struct BeamNetwork
    {
        ArraySpec spec;
        std::vector<BeamBranch> branches;
        double eta = 0.0; // 1 / || sum_i a_t(theta_i) exp(j phi'_i) ||

        size_t size() const { return branches.size(); }
    };

    // Draws the branch phases from rng
    BeamNetwork build_network(const BeamGrid &grid, const ArraySpec &spec, std::mt19937_64 &rng);

    // Same construction with caller-supplied phases (one per grid angle)
    BeamNetwork build_network(const BeamGrid &grid, const ArraySpec &spec, const std::vector<double> &phases);

    // Multiplies sample n (n = -N_cp .. N_c-1 across the CP-prefixed block) by
    // exp(-j 2 pi f_d cos(theta) (m N_s + n) T_s)
    arma::cx_vec dfo_precompensate(const arma::cx_vec &samples, double theta, double max_dfo_hz, int block_index,
                                   const SystemConfig &cfg);

    // M x (N_b N_s) antenna samples: sum_i conj(w_i) times the compensated branch signal.
    // With compensate = false every branch carries the same uncompensated signal.
    arma::cx_mat transmit_frame(const OfdmFrame &frame, const BeamNetwork &net, const SystemConfig &cfg,
                                bool compensate = true);

    // Same as transmit_frame for the samples of one frame already laid out in time
    arma::cx_mat transmit_samples(const arma::cx_vec &samples, const BeamNetwork &net, const SystemConfig &cfg,
                                  bool compensate = true);

    // Received samples (N x T) of a beamformed frame passed through 'real', computed per path from the
    // scalar beam responses w^H(theta_i) a_t(theta_q) without forming the M-antenna signal.
    // 'compensation_dfo_hz' is the f_d assumed by the pre-compensation (0 disables it).
    arma::cx_mat propagate_beamformed(const arma::cx_vec &samples, const BeamNetwork &net,
                                      const ChannelRealization &real, const ArraySpec &rx_spec,
                                      const SystemConfig &cfg, double compensation_dfo_hz);
}

#endif
