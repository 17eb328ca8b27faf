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

#ifndef dopcomp_special_functions_H
#define dopcomp_special_functions_H

namespace dopcomp
{
    // Complete elliptic integral of the first kind in modulus form,
    // K(mu) = int_0^{pi/2} (1 - mu^2 sin^2 xi)^{-1/2} d xi, by the arithmetic-geometric mean.
    // Throws domain_error unless 0 <= mu < 1.
    double elliptic_K(double mu);

    // Same integral given the complementary modulus k' = sqrt(1 - mu^2) in (0, 1]; accurate as k' -> 0
    double elliptic_K_complement(double k_prime);

    // Truncated power series (pi/2) sum_n [(2n)! / (2^{2n} (n!)^2)]^2 mu^{2n}
    double elliptic_K_series(double mu, int terms);
}

#endif
