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

#include "dopcomp/system_config.hpp"
#include "dopcomp/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace dopcomp
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        }

        std::string format_double(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        long long parse_int(const std::string &key, const std::string &value)
        {
            long long out = 0;
            const auto *end = value.data() + value.size();
            auto [ptr, ec] = std::from_chars(value.data(), end, out);
            if (ec != std::errc() || ptr != end)
                throw config_error("config key '" + key + "': expected integer, got '" + value + "'");
            return out;
        }

        double parse_double(const std::string &key, const std::string &value)
        {
            std::istringstream is(value);
            is.imbue(std::locale::classic());
            double out = 0.0;
            is >> out;
            if (is.fail() || !is.eof())
                throw config_error("config key '" + key + "': expected number, got '" + value + "'");
            return out;
        }

        std::vector<std::string> split_list(const std::string &value)
        {
            std::vector<std::string> items;
            if (trim(value).empty())
                return items;
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ','))
                items.push_back(trim(item));
            return items;
        }

        struct KeyBinding
        {
            const char *key;
            std::function<void(SystemConfig &, const std::string &)> set;
            std::function<std::string(const SystemConfig &)> get;
        };

        template <typename T>
        KeyBinding int_key(const char *key, T SystemConfig::*member)
        {
            return {key,
                    [key, member](SystemConfig &c, const std::string &v) { c.*member = static_cast<T>(parse_int(key, v)); },
                    [member](const SystemConfig &c) { return std::to_string(c.*member); }};
        }

        KeyBinding double_key(const char *key, double SystemConfig::*member)
        {
            return {key,
                    [key, member](SystemConfig &c, const std::string &v) { c.*member = parse_double(key, v); },
                    [member](const SystemConfig &c) { return format_double(c.*member); }};
        }

        const std::vector<KeyBinding> &bindings()
        {
            static const std::vector<KeyBinding> table = {
                int_key("num_subcarriers", &SystemConfig::num_subcarriers),
                int_key("cp_length", &SystemConfig::cp_length),
                int_key("blocks_per_frame", &SystemConfig::blocks_per_frame),
                double_key("sample_period_s", &SystemConfig::sample_period_s),
                double_key("wavelength_m", &SystemConfig::wavelength_m),
                double_key("max_dfo_hz", &SystemConfig::max_dfo_hz),
                int_key("tx_antennas", &SystemConfig::tx_antennas),
                int_key("rx_antennas", &SystemConfig::rx_antennas),
                double_key("tx_d_over_lambda", &SystemConfig::tx_d_over_lambda),
                double_key("rx_d_over_lambda", &SystemConfig::rx_d_over_lambda),
                double_key("beam_spacing_deg", &SystemConfig::beam_spacing_deg),
                int_key("qam_order", &SystemConfig::qam_order),
                int_key("num_taps", &SystemConfig::num_taps),
                int_key("paths_per_tap", &SystemConfig::paths_per_tap),
                {"tap_delays",
                 [](SystemConfig &c, const std::string &v)
                 {
                     c.tap_delays.clear();
                     for (const auto &item : split_list(v))
                         c.tap_delays.push_back(static_cast<int>(parse_int("tap_delays", item)));
                 },
                 [](const SystemConfig &c)
                 {
                     std::string out;
                     for (size_t i = 0; i < c.tap_delays.size(); ++i)
                         out += (i ? "," : "") + std::to_string(c.tap_delays[i]);
                     return out;
                 }},
                {"tap_powers_db",
                 [](SystemConfig &c, const std::string &v)
                 {
                     c.tap_powers_db.clear();
                     for (const auto &item : split_list(v))
                         c.tap_powers_db.push_back(parse_double("tap_powers_db", item));
                 },
                 [](const SystemConfig &c)
                 {
                     std::string out;
                     for (size_t i = 0; i < c.tap_powers_db.size(); ++i)
                         out += (i ? "," : "") + format_double(c.tap_powers_db[i]);
                     return out;
                 }},
                double_key("training_amplitude", &SystemConfig::training_amplitude),
                {"master_seed",
                 [](SystemConfig &c, const std::string &v)
                 {
                     std::uint64_t out = 0;
                     const auto *end = v.data() + v.size();
                     auto [ptr, ec] = std::from_chars(v.data(), end, out);
                     if (ec != std::errc() || ptr != end)
                         throw config_error("config key 'master_seed': expected unsigned integer, got '" + v + "'");
                     c.master_seed = out;
                 },
                 [](const SystemConfig &c) { return std::to_string(c.master_seed); }},
            };
            return table;
        }
    }

    ArraySpec SystemConfig::rx_array() const
    {
        if (rx_antennas < 1)
            throw config_error("rx_antennas must be >= 1");
        return ArraySpec{rx_antennas, rx_d_over_lambda};
    }

    std::vector<double> SystemConfig::tap_powers() const
    {
        std::vector<double> p(static_cast<size_t>(num_taps), 1.0);
        if (!tap_powers_db.empty())
            for (size_t l = 0; l < p.size(); ++l)
                p[l] = std::pow(10.0, tap_powers_db[l] / 10.0);
        double total = 0.0;
        for (double v : p)
            total += v;
        for (double &v : p)
            v /= total;
        return p;
    }

    void SystemConfig::validate() const
    {
        auto fail = [](const std::string &msg) { throw config_error("invalid config: " + msg); };
        if (num_subcarriers < 1)
            fail("num_subcarriers must be positive");
        if (cp_length < 0)
            fail("cp_length must be non-negative");
        if (blocks_per_frame < 2)
            fail("blocks_per_frame must be >= 2 (training + data)");
        if (!(sample_period_s > 0.0))
            fail("sample_period_s must be positive");
        if (!(wavelength_m > 0.0))
            fail("wavelength_m must be positive");
        if (!(max_dfo_hz >= 0.0))
            fail("max_dfo_hz must be non-negative");
        if (tx_antennas < 1 || rx_antennas < 1)
            fail("antenna counts must be positive");
        if (!(tx_d_over_lambda > 0.0 && tx_d_over_lambda < 0.5))
            fail("tx_d_over_lambda must lie in (0, 0.5)");
        if (!(rx_d_over_lambda > 0.0))
            fail("rx_d_over_lambda must be positive");
        if (qam_order < 4)
            fail("qam_order must be a square power of two >= 4");
        {
            const int bits = static_cast<int>(std::lround(std::log2(qam_order)));
            if ((1 << bits) != qam_order || bits % 2 != 0)
                fail("qam_order must be a square power of two >= 4");
        }
        if (num_taps < 1 || paths_per_tap < 1)
            fail("num_taps and paths_per_tap must be positive");
        if (static_cast<int>(tap_delays.size()) != num_taps)
            fail("tap_delays must list exactly num_taps delays");
        if (!tap_powers_db.empty() && static_cast<int>(tap_powers_db.size()) != num_taps)
            fail("tap_powers_db must be empty or list num_taps values");
        if (tap_delays.front() != 0)
            fail("first tap delay must be 0");
        std::set<int> seen;
        for (int d : tap_delays)
        {
            if (d < 0)
                fail("tap delays must be non-negative");
            if (d > cp_length)
                fail("tap delay " + std::to_string(d) + " exceeds cp_length " + std::to_string(cp_length));
            if (!seen.insert(d).second)
                fail("tap delays must be distinct");
        }
        if (!(beam_spacing_deg > 0.0))
            fail("beam_spacing_deg must be positive");
        if (!(training_amplitude > 0.0))
            fail("training_amplitude must be positive");
    }

    std::string SystemConfig::to_text() const
    {
        std::string out;
        for (const auto &b : bindings())
            out += std::string(b.key) + " = " + b.get(*this) + "\n";
        return out;
    }

    void set_config_value(SystemConfig &cfg, const std::string &key, const std::string &value)
    {
        for (const auto &b : bindings())
            if (key == b.key)
            {
                b.set(cfg, trim(value));
                return;
            }
        throw config_error("unknown config key '" + key + "'");
    }

    SystemConfig parse_config(const std::string &text, const SystemConfig &base)
    {
        SystemConfig cfg = base;
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw config_error("config line " + std::to_string(line_no) + ": expected key = value");
            try
            {
                set_config_value(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
            }
            catch (const config_error &e)
            {
                throw config_error("config line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        return cfg;
    }

    SystemConfig load_config_file(const std::string &path)
    {
        std::ifstream f(path);
        if (!f)
            throw config_error("cannot open config file '" + path + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        return parse_config(ss.str());
    }
}
