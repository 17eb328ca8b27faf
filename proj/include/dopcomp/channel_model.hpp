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

#ifndef dopcomp_channel_model_H
#define dopcomp_channel_model_H

#include <armadillo>
#include <complex>
#include <random>
#include <vector>

#include "dopcomp/array_geometry.hpp"
#include "dopcomp/system_config.hpp"

namespace dopcomp
{
    // One scattering path; the Doppler shift follows from the angle of departure
    struct PathParams
    {
        std::complex<double> alpha; // complex gain including the random path phase
        double aod = 0.0;           // theta, radians in [0, pi], measured from the direction of motion
        double aoa = 0.0;           // vartheta, radians in [0, pi]
        double dfo_hz = 0.0;        // f_d cos(theta)
    };

    struct Tap
    {
        int delay = 0; // samples
        std::vector<PathParams> paths;
    };

    // Channel parameters frozen over one frame
    struct ChannelRealization
    {
        std::vector<Tap> taps;
        double max_dfo_hz = 0.0;      // f_d
        double sample_period_s = 0.0; // T_s
        bool frozen = true;

        size_t num_paths() const;
    };

    // Equal-power sum-of-paths draw: angles i.i.d. uniform on (0, pi), phases uniform on [0, 2 pi),
    // |alpha| = sqrt(p_l / N_p) with p_l the normalized tap power. Throws config_error on an invalid cfg.
    ChannelRealization draw_realization(const SystemConfig &cfg, std::mt19937_64 &rng);

    // Overwrite the Doppler shift of every path after angles or f_d were edited by hand
    void refresh_dfo(ChannelRealization &real);

    // g_{n_r, n_t}(l, n): sum over the paths of one tap at sample time n (0-based antenna indices)
    std::complex<double> tap_gain(const Tap &tap, long n, int tx_index, int rx_index,
                                  const ArraySpec &tx_spec, const ArraySpec &rx_spec,
                                  double max_dfo_hz, double sample_period_s);

    // Noiseless received samples y (N x T) for transmit samples x (M x T). Column c of x is sent at
    // absolute sample time frame_offset + c; samples before column 0 are zero.
    // Evaluates every antenna pair explicitly.
    arma::cx_mat apply_channel(const ChannelRealization &real, const arma::cx_mat &tx, long frame_offset,
                               const ArraySpec &tx_spec, const ArraySpec &rx_spec);

    // Same result, computed per path as rx phase * alpha * Doppler ramp * (a_t^T x)
    arma::cx_mat apply_channel_factored(const ChannelRealization &real, const arma::cx_mat &tx, long frame_offset,
                                        const ArraySpec &tx_spec, const ArraySpec &rx_spec);
}

#endif
