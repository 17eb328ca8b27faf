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

#ifndef dopcomp_array_geometry_H
#define dopcomp_array_geometry_H

#include <armadillo>
#include <complex>
#include <vector>

namespace dopcomp
{
    // Uniform linear array along the direction of motion
    struct ArraySpec
    {
        int num_elements = 0;       // M
        double d_over_lambda = 0.0; // element spacing in wavelengths, 0 < d/lambda < 0.5

        // Throws dopcomp::domain_error unless M >= 2 and 0 < d/lambda < 0.5
        static ArraySpec make(int num_elements, double d_over_lambda);
    };

    // Offline beamforming directions, one per bin of width 'spacing_rad' centered in (0, pi)
    struct BeamGrid
    {
        std::vector<double> angles; // radians, strictly increasing
        double spacing_rad = 0.0;

        size_t size() const { return angles.size(); }
    };

    // a_t(theta): element n (0-based) is exp(j 2 pi n (d/lambda) cos(theta)); norm is sqrt(M)
    arma::cx_vec steering_vector(const ArraySpec &spec, double theta);

    // Normalized array factor sin(pi M d y) / (M sin(pi d y)) for y = cos(theta_tilde) - cos(theta);
    // equals 1 at y = 0 and matches |(1/M) a_t(theta)^H a_t(theta_tilde)| in magnitude.
    double antenna_gain(const ArraySpec &spec, double theta, double theta_tilde);

    // Same array factor parameterized directly by the direction-cosine difference y in [-2, 2]
    double antenna_gain_y(int num_elements, double d_over_lambda, double y);

    // a_t(theta_beam)^H a_t(theta_path) in closed form, including the linear phase of the
    // first-element reference: exp(j pi (M-1) d y) sin(pi M d y) / sin(pi d y)
    std::complex<double> array_response(const ArraySpec &spec, double theta_beam, double theta_path);

    // Q = 180 / spacing_deg beams at (i + 1/2) * spacing; throws if spacing <= 0 or does not divide 180
    BeamGrid build_beam_grid(double spacing_deg);
}

#endif
