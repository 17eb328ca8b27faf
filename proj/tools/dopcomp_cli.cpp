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

// Command-line driver for the PSD, spread and SER experiments and the validation suite

#include "CLI11.hpp"

#include "dopcomp/errors.hpp"
#include "dopcomp/experiments.hpp"
#include "dopcomp/validation.hpp"

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace
{
    struct CommonOptions
    {
        std::string config_path;
        std::uint64_t seed = 0;
        bool seed_set = false;
        std::string out_dir = "results";
        std::vector<std::string> overrides; // key=value
    };

    dopcomp::SystemConfig make_config(const CommonOptions &o)
    {
        dopcomp::SystemConfig cfg = o.config_path.empty() ? dopcomp::SystemConfig{} : dopcomp::load_config_file(o.config_path);
        for (const auto &kv : o.overrides)
        {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw dopcomp::config_error("--set expects key=value, got '" + kv + "'");
            dopcomp::set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (o.seed_set)
            cfg.master_seed = o.seed;
        cfg.validate();
        return cfg;
    }

    void add_common(CLI::App *sub, CommonOptions &o)
    {
        sub->add_option("--config", o.config_path, "Flat key=value configuration file")->check(CLI::ExistingFile);
        sub->add_option_function<std::uint64_t>(
            "--seed", [&o](const std::uint64_t &s) { o.seed = s, o.seed_set = true; }, "Master seed");
        sub->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
        sub->add_option("--set", o.overrides, "Override a configuration key (key=value), repeatable");
    }

    void report(const dopcomp::ExperimentOutput &out, const std::string &manifest)
    {
        for (const auto &s : out.summary)
            std::cout << s << "\n";
        for (const auto &f : out.files)
            std::cout << "wrote " << f.name << " (" << f.table.rows.size() << " rows)\n";
        std::cout << "manifest " << manifest << "\n";
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Doppler pre-compensation experiments"};
    app.require_subcommand(1);

    CommonOptions common;
    std::vector<int> m_list;
    std::vector<double> fd_list, snr_list{0, 5, 10, 15, 20, 25, 30};
    std::vector<std::string> scheme_names{"proposed", "conventional_dfo", "conventional_nodfo"};
    int frames = 2000, points = 16384, trials = 500;
    bool skip_ser = false;

    auto *psd = app.add_subcommand("psd", "Jakes and equivalent-channel PSD");
    add_common(psd, common);
    psd->add_option("--points", points, "Frequency grid points")->check(CLI::Range(3, 1 << 22))->capture_default_str();

    auto *vs_fd = app.add_subcommand("spread-vs-fd", "Doppler spread versus f_d T_b");
    add_common(vs_fd, common);
    vs_fd->add_option("--fd-list", fd_list, "f_d T_b values")->delimiter(',');
    vs_fd->add_option("--m-list", m_list, "Transmit array sizes")->delimiter(',');

    auto *vs_m = app.add_subcommand("spread-vs-m", "Doppler spread versus M with the asymptotic fit");
    add_common(vs_m, common);
    vs_m->add_option("--m-list", m_list, "Transmit array sizes")->delimiter(',');

    auto *ser = app.add_subcommand("ser", "Symbol error rate versus SNR");
    add_common(ser, common);
    ser->add_option("--snr-list", snr_list, "SNR values in dB")->delimiter(',');
    ser->add_option("--m-list", m_list, "Array sizes of the proposed scheme")->delimiter(',');
    ser->add_option("--schemes", scheme_names, "Schemes")->delimiter(',');
    ser->add_option("--frames", frames, "Frames per SER point (at least 200)")
        ->check(CLI::Range(200, 1 << 30))
        ->capture_default_str();

    auto *validate = app.add_subcommand("validate", "Run the acceptance checks");
    add_common(validate, common);
    validate->add_option("--frames", frames, "Frames per SER point")->check(CLI::PositiveNumber)->capture_default_str();
    validate->add_option("--trials", trials, "Monte-Carlo trials of the empirical spread")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    validate->add_flag("--skip-ser", skip_ser, "Skip the SER ordering check");

    CLI11_PARSE(app, argc, argv);

    try
    {
        const auto cfg = make_config(common);
        const auto start = std::chrono::steady_clock::now();
        dopcomp::ExperimentOutput out;
        if (*psd)
            out = dopcomp::run_psd(cfg, points);
        else if (*vs_fd)
            out = dopcomp::run_spread_vs_fd(cfg, fd_list.empty() ? std::vector<double>{0.025, 0.05, 0.075, 0.1, 0.125,
                                                                                         0.15, 0.175, 0.2}
                                                                 : fd_list,
                                            m_list.empty() ? std::vector<int>{128, 256, 512, 1024} : m_list);
        else if (*vs_m)
            out = dopcomp::run_spread_vs_m(cfg, m_list.empty() ? std::vector<int>{128, 256, 512, 1024, 2048, 4096}
                                                               : m_list);
        else if (*ser)
        {
            std::vector<dopcomp::Scheme> schemes;
            for (const auto &s : scheme_names)
                schemes.push_back(dopcomp::parse_scheme(s));
            out = dopcomp::run_ser(cfg, snr_list, schemes, frames,
                                   m_list.empty() ? std::vector<int>{128, 256, 512, 1024} : m_list);
        }
        else
        {
            dopcomp::ValidateOptions opt;
            opt.ser_frames = frames;
            opt.mc_trials = trials;
            opt.include_ser = !skip_ser;
            out = dopcomp::run_validate(cfg, opt, [](const dopcomp::CheckResult &r)
                                        { std::cout << dopcomp::format_check_line(r) << std::endl; });
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report(out, dopcomp::write_outputs(common.out_dir, out, cfg, seconds));
        return out.passed ? 0 : 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
