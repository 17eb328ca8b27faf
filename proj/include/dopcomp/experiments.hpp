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

#ifndef dopcomp_experiments_H
#define dopcomp_experiments_H

#include <string>
#include <vector>

#include "dopcomp/link_simulation.hpp"
#include "dopcomp/system_config.hpp"

namespace dopcomp
{
    // Comma-separated table with a header row, LF line endings
    struct CsvTable
    {
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;

        void add_row(std::vector<std::string> row); // throws contract_error on a column-count mismatch
        std::string to_string() const;
    };

    // Shortest round-trip decimal form ("%.17g")
    std::string format_number(double v);

    struct CsvFile
    {
        std::string name; // file name inside the output directory
        CsvTable table;
    };

    struct ExperimentOutput
    {
        std::string experiment;
        std::vector<CsvFile> files;
        std::vector<std::string> summary; // human-readable lines printed by the CLI
        bool passed = true;               // validate only
    };

    // Jakes and equivalent-channel PSD at cfg.tx_antennas and cfg.max_dfo_hz
    ExperimentOutput run_psd(const SystemConfig &cfg, int points = 16384);

    // closed-form, numeric-oracle and Jakes spreads per f_d T_b value and M
    ExperimentOutput run_spread_vs_fd(const SystemConfig &cfg, const std::vector<double> &fd_tb_list,
                                      const std::vector<int> &m_list = {128, 256, 512, 1024});

    // closed-form spread versus M with the fitted asymptotic law; throws contract_error for < 2 values
    ExperimentOutput run_spread_vs_m(const SystemConfig &cfg, const std::vector<int> &m_list);

    // SER per scheme and SNR. The proposed scheme runs every M in proposed_m_list; the
    // conventional schemes run at cfg.tx_antennas.
    ExperimentOutput run_ser(const SystemConfig &cfg, const std::vector<double> &snr_list,
                             const std::vector<Scheme> &schemes, int frames,
                             const std::vector<int> &proposed_m_list = {128, 256, 512, 1024});

    // Git blob object id: SHA-1 of "blob <size>\0" followed by the content
    std::string git_blob_sha1(const std::string &content);

    // Writes every CSV of 'out' plus <experiment>_manifest.txt (config echo, seed, output hashes,
    // duration) into 'dir', creating it if needed. Returns the manifest path.
    std::string write_outputs(const std::string &dir, const ExperimentOutput &out, const SystemConfig &cfg,
                              double duration_s);
}

#endif
