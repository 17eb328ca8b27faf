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

#ifndef dopcomp_ofdm_phy_H
#define dopcomp_ofdm_phy_H

#include <armadillo>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "dopcomp/system_config.hpp"

namespace dopcomp
{
    // Gray-coded square QAM with unit average symbol energy
    class QamConstellation
    {
    public:
        explicit QamConstellation(int order); // order = 4, 16, 64, ...

        int order() const { return order_; }
        int bits_per_symbol() const { return bits_; }
        const std::vector<std::complex<double>> &points() const { return points_; }

        // Bits are MSB-first groups of bits_per_symbol(); throws contract_error on a ragged length
        std::vector<std::complex<double>> map_bits(std::span<const std::uint8_t> bits) const;
        std::vector<std::complex<double>> map_indices(std::span<const int> indices) const;

        // Nearest-neighbor decisions
        std::vector<int> demap_indices(std::span<const std::complex<double>> symbols) const;
        std::vector<std::uint8_t> demap_bits(std::span<const std::complex<double>> symbols) const;
        int decide(std::complex<double> symbol) const;

    private:
        int order_;
        int bits_;
        int levels_; // per axis
        double scale_;
        std::vector<std::complex<double>> points_;
    };

    // One frame: blocks[0] is the training block known to the receiver, the rest carry data
    struct OfdmFrame
    {
        std::vector<arma::cx_vec> blocks;            // N_b frequency-domain blocks of N_c symbols
        std::vector<std::vector<int>> data_indices; // constellation indices of blocks 1..N_b-1

        size_t num_blocks() const { return blocks.size(); }
    };

    // s(n) = 1/sqrt(N_c) sum_k x_k exp(j 2 pi k n / N_c), n = -N_cp .. N_c-1 (CP first)
    arma::cx_vec ofdm_modulate(const arma::cx_vec &block, int cp_length);
    arma::cx_vec ofdm_modulate(const arma::cx_vec &block, const SystemConfig &cfg);

    // Drops the first cp_length samples and applies the unitary forward DFT
    arma::cx_vec ofdm_demodulate(const arma::cx_vec &samples, int num_subcarriers, int cp_length);
    arma::cx_vec ofdm_demodulate(const arma::cx_vec &samples, const SystemConfig &cfg);

    // Constant-amplitude QPSK training symbols (fixed sequence, amplitude cfg.training_amplitude)
    arma::cx_vec training_block(const SystemConfig &cfg);

    // Training block followed by N_b - 1 blocks of uniformly drawn constellation points
    OfdmFrame make_frame(const SystemConfig &cfg, const QamConstellation &qam, std::mt19937_64 &rng);

    // Time-domain samples of all blocks, concatenated (length N_b * N_s)
    arma::cx_vec frame_samples(const OfdmFrame &frame, const SystemConfig &cfg);
}

#endif
