// SPDX-License-Identifier: Apache-2.0
//
// kronsbl — sparse Bayesian estimators over Kronecker-structured dictionaries
// Copyright (C) 2026 kronsbl contributors
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

#ifndef KRONSBL_CHANNEL_HPP
#define KRONSBL_CHANNEL_HPP

#include "kronsbl/dictionary.hpp"
#include "kronsbl/rng.hpp"
#include "kronsbl/types.hpp"

#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

namespace kronsbl
{

// Generative description of one uplink estimation problem: a base station
// with a half-wavelength uniform linear array of num_antennas elements
// receives pilot_length pilot symbols from num_users single-antenna users
// whose channels are sums of num_scatterers far-field paths.
struct ChannelScenario
{
    int num_antennas = 64; // M
    int num_users = 4;     // K
    int pilot_length = 12; // N
    int transform_size = 0; // Q; 0 means "equal to num_antennas"
    double snr_db = 0.0;
    int num_scatterers = 3;
    double carrier_freq = 30e9;                    // Hz
    double range_min = 100.0, range_max = 500.0;   // meters
    double angular_spread = std::numbers::pi / 6.0; // full sector width, radians
    std::uint64_t seed = 0;

    int q() const { return transform_size > 0 ? transform_size : num_antennas; }

    // Throws std::invalid_argument on violated invariants; the K ≤ N
    // constraint is reported as "pilot rows exceed pilot length".
    void validate() const;
};

// One propagation path: distance to the scatterer, arrival angle, and the
// complex path gain (free-space amplitude times a complex Gaussian).
struct Scatterer
{
    double range = 0.0;
    double angle = 0.0;
    cxd gain{0.0, 0.0};
};

// per-user list of paths
using ScattererSet = std::vector<std::vector<Scatterer>>;

// Received pilot block Z (M×N) and its column-major vectorization z, so
// that z[n·M + m] = Z(m, n).
struct Observation
{
    CMat Z;
    CVec z;
};

// First K rows of the N-point DFT matrix: P[k, n] = exp(−2πi·k·n/N).
// Rows are mutually orthogonal with P·Pᴴ = N·I. Throws when K > N.
CMat dft_pilot(int K, int N);

// M-point DFT matrix, orthogonal up to scale: Fᴴ·F = M·I.
CMat dft_transform(int M);

// Half-wavelength ULA steering vector a_m = exp(iπ·m·sin angle), m = 0..M−1.
// angle must lie in [−π/2, π/2] (the endpoints are the endfire directions).
CVec array_response(int M, double angle);

// Noise variance for a given SNR under the unit-average-channel-energy
// normalization: σ² = 10^(−snr_db/10). snr_db = +inf is the noiseless
// sentinel and maps to 0.
double noise_variance_from_snr_db(double snr_db);

// Draws one channel realization. Per user: a sector center uniform in
// ±(π/2 − spread/2) — so the whole sector stays inside the array's field
// of view — then num_scatterers paths with angles uniform within
// ±spread/2 of the center, ranges uniform in [range_min, range_max], and
// gains CN(0, 1) scaled by the free-space amplitude λ/(4π·range). The
// column h_k sums the path contributions gain·a(angle); H is finally
// rescaled so that ‖H‖²_F = M·K exactly. The draw order above is part of
// the determinism contract: identical (scenario, rng stream) reproduce H
// bit for bit.
std::pair<CMat, ScattererSet> generate_channel(const ChannelScenario &scenario, Rng &rng);

// Z = H·P + E with E entries i.i.d. CN(0, σ²), σ² from snr_db (+inf → no
// noise is drawn and Z = H·P exactly).
Observation observe(const CMat &H, const CMat &pilot, double snr_db, Rng &rng);

// Devectorizes u_hat (length Q·num_users, column-major) into the Q×K
// coefficient matrix and applies the transform: H_hat = F·U.
CMat reconstruct_channel(const CVec &u_hat, const CMat &transform, int num_users);

// DFT pilot + DFT transform dictionary for a scenario. Both Gram factors
// are scaled identities, so the regularized Gram is diagonal for every
// scenario built this way.
KronDictionary make_dictionary(const ChannelScenario &scenario);

} // namespace kronsbl

#endif
