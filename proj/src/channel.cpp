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

#include "kronsbl/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kronsbl
{

namespace
{

constexpr double speed_of_light = 299792458.0; // m/s

void require(bool ok, const std::string &message)
{
    if (!ok)
        throw std::invalid_argument(message);
}

} // namespace

void ChannelScenario::validate() const
{
    require(num_antennas > 0, "number of antennas must be positive");
    require(num_users > 0, "number of users must be positive");
    require(pilot_length > 0, "pilot length must be positive");
    require(num_users <= pilot_length,
            "pilot rows exceed pilot length: K = " + std::to_string(num_users) +
                " > N = " + std::to_string(pilot_length));
    require(transform_size >= 0, "transform size must be nonnegative");
    require(num_scatterers > 0, "number of scatterers must be positive");
    require(std::isfinite(carrier_freq) && carrier_freq > 0.0, "carrier frequency must be positive");
    require(std::isfinite(range_min) && range_min > 0.0, "minimum range must be positive");
    require(std::isfinite(range_max) && range_max >= range_min,
            "maximum range must be at least the minimum range");
    require(std::isfinite(angular_spread) && angular_spread > 0.0 &&
                angular_spread < std::numbers::pi,
            "angular spread must lie in (0, pi)");
    require(transform_size <= num_antennas,
            "transform size exceeds antenna count: Q = " + std::to_string(transform_size) +
                " > M = " + std::to_string(num_antennas));
    require(!std::isnan(snr_db) && snr_db != -std::numeric_limits<double>::infinity(),
            "snr_db must be a number or +inf");
}

CMat dft_pilot(int K, int N)
{
    require(K > 0 && N > 0, "pilot dimensions must be positive");
    require(K <= N, "pilot rows exceed pilot length: K = " + std::to_string(K) +
                        " > N = " + std::to_string(N));
    CMat P(K, N);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(N);
    for (int k = 0; k < K; ++k)
        for (int n = 0; n < N; ++n)
        {
            const double phase = -step * static_cast<double>(k) * static_cast<double>(n);
            P(k, n) = cxd(std::cos(phase), std::sin(phase));
        }
    return P;
}

CMat dft_transform(int M)
{
    require(M > 0, "transform size must be positive");
    CMat F(M, M);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(M);
    for (int m = 0; m < M; ++m)
        for (int q = 0; q < M; ++q)
        {
            const double phase = -step * static_cast<double>(m) * static_cast<double>(q);
            F(m, q) = cxd(std::cos(phase), std::sin(phase));
        }
    return F;
}

CVec array_response(int M, double angle)
{
    require(M > 0, "array size must be positive");
    require(std::isfinite(angle) && std::abs(angle) <= std::numbers::pi / 2.0,
            "arrival angle must lie in [-pi/2, pi/2]");
    CVec a(M);
    const double step = std::numbers::pi * std::sin(angle);
    for (int m = 0; m < M; ++m)
    {
        const double phase = step * static_cast<double>(m);
        a(m) = cxd(std::cos(phase), std::sin(phase));
    }
    return a;
}

double noise_variance_from_snr_db(double snr_db)
{
    require(!std::isnan(snr_db) && snr_db != -std::numeric_limits<double>::infinity(),
            "snr_db must be a number or +inf");
    if (snr_db == std::numeric_limits<double>::infinity())
        return 0.0;
    return std::pow(10.0, -snr_db / 10.0);
}

std::pair<CMat, ScattererSet> generate_channel(const ChannelScenario &scenario, Rng &rng)
{
    scenario.validate();
    const int M = scenario.num_antennas;
    const int K = scenario.num_users;
    const int L = scenario.num_scatterers;
    const double lambda = speed_of_light / scenario.carrier_freq;
    const double half_spread = scenario.angular_spread / 2.0;
    const double center_bound = std::numbers::pi / 2.0 - half_spread;

    CMat H = CMat::Zero(M, K);
    ScattererSet paths(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
    {
        // Draw order (center, then per path: angle, range, gain) is frozen;
        // changing it silently changes every seeded realization.
        const double center = rng.uniform(-center_bound, center_bound);
        auto &user_paths = paths[static_cast<std::size_t>(k)];
        user_paths.reserve(static_cast<std::size_t>(L));
        for (int l = 0; l < L; ++l)
        {
            Scatterer s;
            s.angle = center + rng.uniform(-half_spread, half_spread);
            s.range = rng.uniform(scenario.range_min, scenario.range_max);
            const double amplitude = lambda / (4.0 * std::numbers::pi * s.range);
            s.gain = amplitude * rng.cgaussian(1.0);
            H.col(k) += s.gain * array_response(M, s.angle);
            user_paths.push_back(s);
        }
    }

    // Normalize the realization so the average per-coefficient channel
    // energy is exactly one: ‖H‖²_F = M·K. This pins the meaning of snr_db
    // regardless of carrier frequency or scatterer ranges.
    const double energy = H.squaredNorm();
    if (!(energy > 0.0))
        throw std::runtime_error("generated channel has zero energy; cannot normalize");
    const double scale = std::sqrt(static_cast<double>(M) * static_cast<double>(K) / energy);
    H *= scale;
    for (auto &user_paths : paths)
        for (auto &s : user_paths)
            s.gain *= scale;

    return {std::move(H), std::move(paths)};
}

Observation observe(const CMat &H, const CMat &pilot, double snr_db, Rng &rng)
{
    require(H.size() > 0 && pilot.size() > 0, "channel and pilot must be non-empty");
    require(H.cols() == pilot.rows(),
            "channel has " + std::to_string(H.cols()) + " columns but pilot has " +
                std::to_string(pilot.rows()) + " rows");
    const double sigma2 = noise_variance_from_snr_db(snr_db);

    Observation obs;
    obs.Z = H * pilot;
    if (sigma2 > 0.0)
    {
        // Column-major draw order over the M×N block, matching the layout
        // of the vectorization below.
        for (Eigen::Index n = 0; n < obs.Z.cols(); ++n)
            for (Eigen::Index m = 0; m < obs.Z.rows(); ++m)
                obs.Z(m, n) += rng.cgaussian(sigma2);
    }
    obs.z = Eigen::Map<const CVec>(obs.Z.data(), obs.Z.size());
    return obs;
}

CMat reconstruct_channel(const CVec &u_hat, const CMat &transform, int num_users)
{
    require(num_users > 0, "number of users must be positive");
    require(transform.size() > 0, "transform must be non-empty");
    const Eigen::Index Q = transform.cols();
    require(u_hat.size() == Q * num_users,
            "coefficient vector has length " + std::to_string(u_hat.size()) + " but expected " +
                std::to_string(Q * num_users));
    Eigen::Map<const CMat> U(u_hat.data(), Q, num_users);
    return transform * U;
}

KronDictionary make_dictionary(const ChannelScenario &scenario)
{
    scenario.validate();
    // First q() columns of the M-point DFT: columns stay orthogonal
    // (FᴴF = M·I), so the regularized Gram is diagonal for any q() ≤ M.
    CMat F = dft_transform(scenario.num_antennas);
    return KronDictionary(dft_pilot(scenario.num_users, scenario.pilot_length),
                          F.leftCols(scenario.q()));
}

} // namespace kronsbl
