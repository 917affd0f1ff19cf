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

#ifndef KRONSBL_RNG_HPP
#define KRONSBL_RNG_HPP

#include "kronsbl/types.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace kronsbl
{

// Deterministic random stream. All draws are derived from mt19937_64 through
// explicit 53-bit uniforms and a Box–Muller transform, never through
// std::*_distribution (whose algorithms are implementation-defined and would
// break the reproducibility contract: identical seed → identical draws).
class Rng
{
  public:
    explicit Rng(std::uint64_t seed);

    // Derives an independent sub-stream from a root seed and a key path,
    // e.g. Rng::derive(seed, {stream_tag, trial_index}). Streams with
    // different paths are statistically independent, and the mapping is a
    // pure function of (seed, path), so trials can run in any order.
    static Rng derive(std::uint64_t seed, const std::vector<std::uint64_t> &path);
    static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

    std::uint64_t raw();                   // next raw 64-bit word
    double uniform();                      // uniform on [0, 1), 53-bit resolution
    double uniform(double lo, double hi);  // uniform on [lo, hi)
    double gaussian();                     // standard normal N(0, 1)

    // Circularly-symmetric complex Gaussian CN(0, variance): independent
    // real and imaginary parts, each with variance variance/2.
    cxd cgaussian(double variance);

  private:
    std::mt19937_64 gen_;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

} // namespace kronsbl

#endif
