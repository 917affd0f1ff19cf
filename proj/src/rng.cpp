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

#include "kronsbl/rng.hpp"

#include <cmath>
#include <numbers>

namespace kronsbl
{

namespace
{

// splitmix64 finalizer: full-avalanche 64-bit mixer used to fold a key path
// into a single seed word.
std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

Rng::Rng(std::uint64_t seed) : gen_(seed) {}

Rng Rng::derive(std::uint64_t seed, const std::vector<std::uint64_t> &path)
{
    std::uint64_t h = mix64(seed);
    for (std::uint64_t part : path)
        h = mix64(h ^ mix64(part));
    return Rng(h);
}

Rng Rng::derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
{
    return derive(seed, std::vector<std::uint64_t>(path));
}

std::uint64_t Rng::raw()
{
    return gen_();
}

double Rng::uniform()
{
    // Top 53 bits of the raw word scaled into [0, 1).
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi)
{
    return lo + (hi - lo) * uniform();
}

double Rng::gaussian()
{
    if (has_cached_gaussian_)
    {
        has_cached_gaussian_ = false;
        return cached_gaussian_;
    }
    // Box–Muller on (0, 1] × [0, 1); 1 - uniform() avoids log(0).
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_gaussian_ = radius * std::sin(angle);
    has_cached_gaussian_ = true;
    return radius * std::cos(angle);
}

cxd Rng::cgaussian(double variance)
{
    const double s = std::sqrt(variance / 2.0);
    const double re = gaussian();
    const double im = gaussian();
    return {s * re, s * im};
}

} // namespace kronsbl
