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

#ifndef dopcomp_uplink_receiver_H
#define dopcomp_uplink_receiver_H

#include <armadillo>
#include <limits>
#include <random>
#include <vector>

namespace dopcomp
{
    // SNR per receive antenna: mean received signal power over the frame divided by the noise variance
    struct NoiseSpec
    {
        double snr_db = std::numeric_limits<double>::infinity();

        bool noiseless() const { return snr_db == std::numeric_limits<double>::infinity(); }
    };

    // Per receive antenna and subcarrier frequency response, N x N_c
    struct ChannelEstimate
    {
        arma::cx_mat H;
    };

    // Combined symbols plus a flag per subcarrier whose channel column vanished
    struct MrcOutput
    {
        arma::cx_vec symbols;
        std::vector<bool> erased;
    };

    // Adds circular complex Gaussian noise. Returns the noise variance used (0 when noiseless).
    // Throws config_error for a finite SNR on an all-zero signal.
    arma::cx_mat add_awgn(const arma::cx_mat &samples, const NoiseSpec &spec, std::mt19937_64 &rng,
                          double *noise_variance = nullptr);

    // H(r, k) = Y(r, k) / X(k); throws contract_error on a zero training symbol or shape mismatch
    ChannelEstimate ls_estimate(const arma::cx_mat &training_rx, const arma::cx_vec &training_tx);

    // x(k) = sum_r conj(H(r,k)) Y(r,k) / sum_r |H(r,k)|^2; columns with sum |H|^2 < 1e-12 are erased (x = 0)
    MrcOutput mrc_detect(const arma::cx_mat &data_rx, const ChannelEstimate &est);

    // Fraction of mismatching entries; throws contract_error on a length mismatch or empty input
    double measure_ser(const std::vector<int> &decided, const std::vector<int> &truth);
}

#endif
