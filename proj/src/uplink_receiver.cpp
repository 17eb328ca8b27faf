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

#include "dopcomp/uplink_receiver.hpp"
#include "dopcomp/errors.hpp"

#include <cmath>
#include <string>

namespace dopcomp
{
    arma::cx_mat add_awgn(const arma::cx_mat &samples, const NoiseSpec &spec, std::mt19937_64 &rng,
                          double *noise_variance)
    {
        if (noise_variance)
            *noise_variance = 0.0;
        if (spec.noiseless())
            return samples;
        if (std::isnan(spec.snr_db))
            throw config_error("add_awgn: SNR is NaN");
        const double power = samples.n_elem ? arma::accu(arma::square(arma::abs(samples))) / samples.n_elem : 0.0;
        if (!(power > 0.0))
            throw config_error("add_awgn: signal power is zero, SNR reference undefined");

        const double variance = power * std::pow(10.0, -spec.snr_db / 10.0);
        const double sd = std::sqrt(variance / 2.0);
        std::normal_distribution<double> gauss(0.0, sd);
        arma::cx_mat out = samples;
        for (auto &v : out)
        {
            const double re = gauss(rng);
            const double im = gauss(rng);
            v += std::complex<double>(re, im);
        }
        if (noise_variance)
            *noise_variance = variance;
        return out;
    }

    ChannelEstimate ls_estimate(const arma::cx_mat &training_rx, const arma::cx_vec &training_tx)
    {
        if (training_rx.n_cols != training_tx.n_elem)
            throw contract_error("ls_estimate: " + std::to_string(training_rx.n_cols) + " received subcarriers vs " +
                                 std::to_string(training_tx.n_elem) + " training symbols");
        for (arma::uword k = 0; k < training_tx.n_elem; ++k)
            if (training_tx(k) == 0.0)
                throw contract_error("ls_estimate: training symbol " + std::to_string(k) + " is zero");
        ChannelEstimate est;
        est.H = training_rx.each_row() / training_tx.st();
        return est;
    }

    MrcOutput mrc_detect(const arma::cx_mat &data_rx, const ChannelEstimate &est)
    {
        if (data_rx.n_rows != est.H.n_rows || data_rx.n_cols != est.H.n_cols)
            throw contract_error("mrc_detect: data and estimate shapes differ");
        MrcOutput out;
        out.symbols.zeros(data_rx.n_cols);
        out.erased.assign(data_rx.n_cols, false);
        for (arma::uword k = 0; k < data_rx.n_cols; ++k)
        {
            const double gain = arma::accu(arma::square(arma::abs(est.H.col(k))));
            if (gain < 1e-12)
            {
                out.erased[k] = true;
                continue;
            }
            out.symbols(k) = arma::cdot(est.H.col(k), data_rx.col(k)) / gain;
        }
        return out;
    }

    double measure_ser(const std::vector<int> &decided, const std::vector<int> &truth)
    {
        if (decided.size() != truth.size())
            throw contract_error("measure_ser: " + std::to_string(decided.size()) + " decisions vs " +
                                 std::to_string(truth.size()) + " reference symbols");
        if (truth.empty())
            throw contract_error("measure_ser: empty input");
        size_t errors = 0;
        for (size_t i = 0; i < truth.size(); ++i)
            errors += decided[i] != truth[i];
        return static_cast<double>(errors) / static_cast<double>(truth.size());
    }
}
