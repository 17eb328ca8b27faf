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

#ifndef dopcomp_seeding_H
#define dopcomp_seeding_H

#include <cstdint>
#include <random>
#include <string_view>

namespace dopcomp
{
    // Stable 64-bit seed for trial 'trial' of experiment 'name' (FNV-1a of the name, mixed by splitmix64).
    // Independent of how many trials run, so budgets can grow without changing earlier trials.
    std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view name, std::uint64_t trial);

    inline std::mt19937_64 trial_rng(std::uint64_t master_seed, std::string_view name, std::uint64_t trial)
    {
        return std::mt19937_64(derive_seed(master_seed, name, trial));
    }
}

#endif
