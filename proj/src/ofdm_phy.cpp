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

#include "dopcomp/ofdm_phy.hpp"
#include "dopcomp/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dopcomp
{
    namespace
    {
        int gray_encode(int v) { return v ^ (v >> 1); }

        int gray_decode(int g)
        {
            int v = 0;
            for (; g; g >>= 1)
                v ^= g;
            return v;
        }
    }

    QamConstellation::QamConstellation(int order) : order_(order)
    {
        bits_ = 0;
        while ((1 << bits_) < order)
            ++bits_;
        if (order < 4 || (1 << bits_) != order || bits_ % 2 != 0)
            throw contract_error("QamConstellation: order must be a square power of two >= 4, got " + std::to_string(order));
        levels_ = 1 << (bits_ / 2);
        // mean energy of a square grid with odd-integer coordinates is 2 (L^2 - 1) / 3
        scale_ = 1.0 / std::sqrt(2.0 * (order_ - 1) / 3.0);

        points_.resize(static_cast<size_t>(order_));
        const int half_bits = bits_ / 2;
        for (int idx = 0; idx < order_; ++idx)
        {
            const int li = gray_decode(idx >> half_bits);
            const int lq = gray_decode(idx & (levels_ - 1));
            points_[idx] = scale_ * std::complex<double>(2 * li - (levels_ - 1), 2 * lq - (levels_ - 1));
        }
    }

    std::vector<std::complex<double>> QamConstellation::map_indices(std::span<const int> indices) const
    {
        std::vector<std::complex<double>> out;
        out.reserve(indices.size());
        for (int idx : indices)
        {
            if (idx < 0 || idx >= order_)
                throw contract_error("QamConstellation: symbol index " + std::to_string(idx) + " out of range");
            out.push_back(points_[idx]);
        }
        return out;
    }

    std::vector<std::complex<double>> QamConstellation::map_bits(std::span<const std::uint8_t> bits) const
    {
        if (bits.size() % static_cast<size_t>(bits_) != 0)
            throw contract_error("QamConstellation: bit count " + std::to_string(bits.size()) +
                                 " is not a multiple of " + std::to_string(bits_));
        std::vector<int> indices(bits.size() / bits_);
        for (size_t s = 0; s < indices.size(); ++s)
        {
            int idx = 0;
            for (int b = 0; b < bits_; ++b)
                idx = (idx << 1) | (bits[s * bits_ + b] & 1);
            indices[s] = idx;
        }
        return map_indices(indices);
    }

    int QamConstellation::decide(std::complex<double> symbol) const
    {
        auto level = [this](double v)
        {
            const double pos = (v / scale_ + (levels_ - 1)) / 2.0;
            const long l = std::lround(pos);
            return static_cast<int>(std::clamp<long>(l, 0, levels_ - 1));
        };
        const int half_bits = bits_ / 2;
        return (gray_encode(level(symbol.real())) << half_bits) | gray_encode(level(symbol.imag()));
    }

    std::vector<int> QamConstellation::demap_indices(std::span<const std::complex<double>> symbols) const
    {
        std::vector<int> out;
        out.reserve(symbols.size());
        for (const auto &s : symbols)
            out.push_back(decide(s));
        return out;
    }

    std::vector<std::uint8_t> QamConstellation::demap_bits(std::span<const std::complex<double>> symbols) const
    {
        std::vector<std::uint8_t> bits;
        bits.reserve(symbols.size() * bits_);
        for (const auto &s : symbols)
        {
            const int idx = decide(s);
            for (int b = bits_ - 1; b >= 0; --b)
                bits.push_back(static_cast<std::uint8_t>((idx >> b) & 1));
        }
        return bits;
    }

    arma::cx_vec ofdm_modulate(const arma::cx_vec &block, int cp_length)
    {
        const arma::uword n = block.n_elem;
        if (n == 0 || cp_length < 0 || static_cast<arma::uword>(cp_length) > n)
            throw contract_error("ofdm_modulate: invalid block/CP length");
        // arma::ifft carries 1/N; the unitary transform needs 1/sqrt(N)
        const arma::cx_vec body = arma::ifft(block) * std::sqrt(static_cast<double>(n));
        arma::cx_vec out(n + cp_length);
        if (cp_length > 0)
            out.head(cp_length) = body.tail(cp_length);
        out.tail(n) = body;
        return out;
    }

    arma::cx_vec ofdm_modulate(const arma::cx_vec &block, const SystemConfig &cfg)
    {
        if (block.n_elem != static_cast<arma::uword>(cfg.num_subcarriers))
            throw contract_error("ofdm_modulate: block length " + std::to_string(block.n_elem) + " != N_c " +
                                 std::to_string(cfg.num_subcarriers));
        return ofdm_modulate(block, cfg.cp_length);
    }

    arma::cx_vec ofdm_demodulate(const arma::cx_vec &samples, int num_subcarriers, int cp_length)
    {
        if (num_subcarriers < 1 || cp_length < 0 ||
            samples.n_elem != static_cast<arma::uword>(num_subcarriers + cp_length))
            throw contract_error("ofdm_demodulate: expected " + std::to_string(num_subcarriers + cp_length) +
                                 " samples, got " + std::to_string(samples.n_elem));
        const arma::cx_vec body = samples.tail(num_subcarriers);
        return arma::fft(body) / std::sqrt(static_cast<double>(num_subcarriers));
    }

    arma::cx_vec ofdm_demodulate(const arma::cx_vec &samples, const SystemConfig &cfg)
    {
        return ofdm_demodulate(samples, cfg.num_subcarriers, cfg.cp_length);
    }

    arma::cx_vec training_block(const SystemConfig &cfg)
    {
        // fixed generator so the receiver can regenerate the sequence
        std::mt19937_64 gen(0x7261696eULL);
        arma::cx_vec x(cfg.num_subcarriers);
        for (auto &v : x)
        {
            const auto quadrant = static_cast<int>(gen() & 3U);
            v = std::polar(cfg.training_amplitude, std::numbers::pi / 4.0 * (2 * quadrant + 1));
        }
        return x;
    }

    OfdmFrame make_frame(const SystemConfig &cfg, const QamConstellation &qam, std::mt19937_64 &rng)
    {
        OfdmFrame frame;
        frame.blocks.reserve(cfg.blocks_per_frame);
        frame.blocks.push_back(training_block(cfg));
        std::uniform_int_distribution<int> pick(0, qam.order() - 1);
        for (int m = 1; m < cfg.blocks_per_frame; ++m)
        {
            std::vector<int> idx(cfg.num_subcarriers);
            for (auto &v : idx)
                v = pick(rng);
            const auto symbols = qam.map_indices(idx);
            frame.blocks.emplace_back(symbols);
            frame.data_indices.push_back(std::move(idx));
        }
        return frame;
    }

    arma::cx_vec frame_samples(const OfdmFrame &frame, const SystemConfig &cfg)
    {
        const int ns = cfg.symbol_length();
        arma::cx_vec out(frame.num_blocks() * ns);
        for (size_t m = 0; m < frame.num_blocks(); ++m)
            out.subvec(m * ns, (m + 1) * ns - 1) = ofdm_modulate(frame.blocks[m], cfg);
        return out;
    }
}
