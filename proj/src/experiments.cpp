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

#include "dopcomp/experiments.hpp"
#include "dopcomp/doppler_analysis.hpp"
#include "dopcomp/errors.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace dopcomp
{
    void CsvTable::add_row(std::vector<std::string> row)
    {
        if (row.size() != header.size())
            throw contract_error("CsvTable: row has " + std::to_string(row.size()) + " fields, header has " +
                                 std::to_string(header.size()));
        rows.push_back(std::move(row));
    }

    std::string CsvTable::to_string() const
    {
        std::string out;
        auto line = [&out](const std::vector<std::string> &fields)
        {
            for (size_t i = 0; i < fields.size(); ++i)
                out += (i ? "," : "") + fields[i];
            out += '\n';
        };
        line(header);
        for (const auto &r : rows)
            line(r);
        return out;
    }

    std::string format_number(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

    ExperimentOutput run_psd(const SystemConfig &cfg, int points)
    {
        const auto p = closed_form_params(cfg.tx_antennas, cfg.tx_d_over_lambda, cfg.max_dfo_hz);
        const auto grid = uniform_omega_grid(p.omega_d, points);
        const auto eq = psd_closed_form(p, grid);
        const auto jakes = jakes_reference_spread(cfg.max_dfo_hz, grid);

        ExperimentOutput out;
        out.experiment = "psd";
        auto table = [](const PsdCurve &c)
        {
            CsvTable t{{"omega_rad_s", "density", "dc_mass"}, {}};
            for (size_t k = 0; k < c.omega.size(); ++k)
                t.add_row({format_number(c.omega[k]), format_number(c.density[k]), format_number(c.dc_mass)});
            return t;
        };
        out.files.push_back({"psd_jakes.csv", table(jakes.psd)});
        out.files.push_back({"psd_equivalent.csv", table(eq)});
        const auto s = spread_closed_form(p);
        out.summary.push_back("M = " + std::to_string(p.M) + ", f_d = " + format_number(cfg.max_dfo_hz) + " Hz");
        out.summary.push_back("sigma_equivalent / omega_d = " + format_number(s.sigma / p.omega_d));
        out.summary.push_back("sigma_jakes / omega_d = " + format_number(jakes.spread / p.omega_d));
        return out;
    }

    ExperimentOutput run_spread_vs_fd(const SystemConfig &cfg, const std::vector<double> &fd_tb_list,
                                      const std::vector<int> &m_list)
    {
        if (fd_tb_list.empty() || m_list.empty())
            throw contract_error("run_spread_vs_fd: empty f_d or M list");
        ExperimentOutput out;
        out.experiment = "spread_vs_fd";
        CsvTable t{{"M", "fd_Tb", "fd_hz", "sigma_closed", "sigma_numeric", "sigma_jakes"}, {}};
        const auto grid = uniform_omega_grid(1.0, 3);
        for (int M : m_list)
            for (double fd_tb : fd_tb_list)
            {
                const double f_d = fd_tb / cfg.block_duration_s();
                const auto p = closed_form_params(M, cfg.tx_d_over_lambda, f_d);
                const double closed = spread_closed_form(p).sigma;
                const double numeric = spread_numeric_oracle(M, cfg.tx_d_over_lambda, f_d).sigma;
                const double jakes = jakes_reference_spread(f_d, grid).spread;
                t.add_row({std::to_string(M), format_number(fd_tb), format_number(f_d), format_number(closed),
                           format_number(numeric), format_number(jakes)});
            }
        out.files.push_back({"spread_vs_fd.csv", std::move(t)});
        out.summary.push_back("spreads in rad/s; " + std::to_string(m_list.size() * fd_tb_list.size()) + " points");
        return out;
    }

    ExperimentOutput run_spread_vs_m(const SystemConfig &cfg, const std::vector<int> &m_list)
    {
        const auto fit = fit_scaling(m_list, cfg.max_dfo_hz, cfg.tx_d_over_lambda);
        ExperimentOutput out;
        out.experiment = "spread_vs_m";
        CsvTable t{{"M", "fd_hz", "sigma_closed", "sigma_asymptotic_fit"}, {}};
        for (size_t k = 0; k < m_list.size(); ++k)
            t.add_row({std::to_string(m_list[k]), format_number(cfg.max_dfo_hz), format_number(fit.sigma[k]),
                       format_number(asymptotic_spread(m_list[k], cfg.max_dfo_hz, fit.kappa))});
        out.files.push_back({"spread_vs_m.csv", std::move(t)});
        CsvTable f{{"kappa_hat", "slope_hat"}, {}};
        f.add_row({format_number(fit.kappa), format_number(fit.slope)});
        out.files.push_back({"spread_vs_m_fit.csv", std::move(f)});
        out.summary.push_back("slope_hat = " + format_number(fit.slope));
        out.summary.push_back("kappa_hat = " + format_number(fit.kappa));
        return out;
    }

    ExperimentOutput run_ser(const SystemConfig &cfg, const std::vector<double> &snr_list,
                             const std::vector<Scheme> &schemes, int frames, const std::vector<int> &proposed_m_list)
    {
        if (snr_list.empty() || schemes.empty())
            throw contract_error("run_ser: empty SNR or scheme list");
        if (frames < 1)
            throw contract_error("run_ser: frames must be positive");
        ExperimentOutput out;
        out.experiment = "ser";
        CsvTable t{{"scheme", "M", "snr_db", "ser", "frames", "ci95"}, {}};
        for (Scheme s : schemes)
        {
            const std::vector<int> Ms = s == Scheme::proposed ? proposed_m_list : std::vector<int>{cfg.tx_antennas};
            for (int M : Ms)
            {
                SystemConfig c = cfg;
                c.tx_antennas = M;
                for (double snr : snr_list)
                {
                    const auto pt = run_ser_point(c, s, snr, frames);
                    t.add_row({scheme_name(s), std::to_string(M), format_number(snr), format_number(pt.ser),
                               std::to_string(pt.frames), format_number(pt.ci95)});
                }
            }
        }
        out.summary.push_back(std::to_string(t.rows.size()) + " SER points, " + std::to_string(frames) + " frames each");
        out.files.push_back({"ser.csv", std::move(t)});
        return out;
    }

    std::string git_blob_sha1(const std::string &content)
    {
        const std::string object = "blob " + std::to_string(content.size()) + std::string(1, '\0') + content;
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int length = 0;
        if (EVP_Digest(object.data(), object.size(), digest, &length, EVP_sha1(), nullptr) != 1)
            throw std::runtime_error("SHA-1 digest failed");
        std::string hex;
        char buf[3];
        for (unsigned int i = 0; i < length; ++i)
        {
            const unsigned char b = digest[i];
            std::snprintf(buf, sizeof buf, "%02x", b);
            hex += buf;
        }
        return hex;
    }

    std::string write_outputs(const std::string &dir, const ExperimentOutput &out, const SystemConfig &cfg,
                              double duration_s)
    {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec)
            throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());

        auto write = [](const fs::path &path, const std::string &content)
        {
            std::ofstream f(path, std::ios::binary);
            if (!f)
                throw std::runtime_error("cannot open '" + path.string() + "' for writing");
            f << content;
            if (!f)
                throw std::runtime_error("write to '" + path.string() + "' failed");
        };

        std::string manifest = "experiment = " + out.experiment + "\n";
        manifest += "master_seed = " + std::to_string(cfg.master_seed) + "\n";
        manifest += "duration_s = " + format_number(duration_s) + "\n";
        manifest += "\n[config]\n" + cfg.to_text();
        manifest += "\n[outputs]\n";
        for (const auto &f : out.files)
        {
            const std::string content = f.table.to_string();
            write(fs::path(dir) / f.name, content);
            manifest += f.name + " " + git_blob_sha1(content) + "\n";
        }
        if (!out.summary.empty())
        {
            manifest += "\n[summary]\n";
            for (const auto &s : out.summary)
                manifest += s + "\n";
        }
        const fs::path mpath = fs::path(dir) / (out.experiment + "_manifest.txt");
        write(mpath, manifest);
        return mpath.string();
    }
}
