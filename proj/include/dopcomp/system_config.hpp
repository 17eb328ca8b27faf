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

#ifndef dopcomp_system_config_H
#define dopcomp_system_config_H

#include <cstdint>
#include <string>
#include <vector>

#include "dopcomp/array_geometry.hpp"

namespace dopcomp
{
    // All physical and OFDM parameters of one simulated uplink. Defaults reproduce the
    // 3 GHz / 360 km/h setup: 128 subcarriers, 5 blocks of 0.1 ms, f_d T_b = 0.1, 16QAM,
    // 128 x 4 ULAs at 0.45 lambda, 6 taps x 64 paths, maximum delay 16 samples.
    struct SystemConfig
    {
        int num_subcarriers = 128;                   // N_c
        int cp_length = 16;                          // N_cp, samples
        int blocks_per_frame = 5;                    // N_b, first block is training
        double sample_period_s = 1.0e-4 / 144.0;     // T_s, so that N_s T_s = 0.1 ms
        double wavelength_m = 0.1;                   // lambda
        double max_dfo_hz = 1000.0;                  // f_d = v / lambda
        int tx_antennas = 128;                       // M
        int rx_antennas = 4;                         // N
        double tx_d_over_lambda = 0.45;              // d_t / lambda
        double rx_d_over_lambda = 0.45;              // receive ULA spacing
        double beam_spacing_deg = 2.0;               // beam grid interval
        int qam_order = 16;                          // square QAM
        int num_taps = 6;                            // L
        int paths_per_tap = 64;                      // N_p
        std::vector<int> tap_delays{0, 3, 6, 9, 12, 16}; // samples, d_1 = 0
        std::vector<double> tap_powers_db{};         // relative tap powers; empty = equal power
        double training_amplitude = 1.0;             // modulus of the training symbols
        std::uint64_t master_seed = 1;

        int symbol_length() const { return num_subcarriers + cp_length; } // N_s
        int frame_length() const { return blocks_per_frame * symbol_length(); }
        double block_duration_s() const { return symbol_length() * sample_period_s; } // T_b
        double speed_mps() const { return max_dfo_hz * wavelength_m; }
        double fd_tb() const { return max_dfo_hz * block_duration_s(); }

        ArraySpec tx_array() const { return ArraySpec::make(tx_antennas, tx_d_over_lambda); }
        ArraySpec rx_array() const;

        // Linear tap powers normalized to unit sum
        std::vector<double> tap_powers() const;

        // Throws config_error on any violated invariant
        void validate() const;

        // Flat "key = value" text, one key per line in a fixed order
        std::string to_text() const;
    };

    // Parse a flat key=value config. '#' starts a comment. Unknown keys are errors.
    // Keys not present keep the defaults of 'base'.
    SystemConfig parse_config(const std::string &text, const SystemConfig &base = SystemConfig{});
    SystemConfig load_config_file(const std::string &path);

    // Apply a single key=value override (same keys as the config file)
    void set_config_value(SystemConfig &cfg, const std::string &key, const std::string &value);
}

#endif
