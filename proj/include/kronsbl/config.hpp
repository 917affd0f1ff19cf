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

#ifndef KRONSBL_CONFIG_HPP
#define KRONSBL_CONFIG_HPP

#include "kronsbl/sweep.hpp"

#include <string>

namespace kronsbl
{

// Result of parsing an experiment config. `spec` is always fully populated
// and validated; when the text has no [sweep] section (an estimate-only
// config), has_sweep is false and the spec degenerates to a single-value
// sweep of snr_db at the scenario's own SNR with one trial.
struct ParsedConfig
{
    SweepSpec spec;
    bool has_sweep = false;
};

// Parses the INI-style experiment config format:
//
//     # comment (';' also starts a comment line)
//     [scenario]
//     M = 64            ; antennas            (required)
//     N = 12            ; pilot length        (required)
//     K = 4             ; users               (required)
//     snr_db = 0        ; SNR in dB, "inf" for noiseless (required)
//     scatterers = 3    ; paths per user
//     seed = 0
//     Q = 64            ; transform columns, defaults to M
//     angular_spread = 0.5235987755982988
//     carrier_freq = 3e10
//     range_min = 100
//     range_max = 500
//
//     [hyper]
//     nu = 1            ; weight-prior degrees of freedom
//     theta = 0.01      ; scale-prior shape
//     phi = 0.01        ; scale-prior rate
//     alpha = 0         ; optional noise-prior shape
//     beta = 0          ; optional noise-prior rate
//
//     [policy]
//     tol = 1e-6
//     max_iter = 500
//     record_objective = false
//
//     [sweep]
//     variable = snr_db ; or pilot_length, num_antennas, num_scatterers
//     values = -10, 0, 10
//     trials = 1000
//     estimators = sbl, esbl, mesbl, ls
//     emit_walltime = false
//     nmse_mode = ratio_of_sums   ; or mean_of_ratios
//
// Unknown sections or keys, duplicates, type mismatches, and constraint
// violations are all rejected with std::invalid_argument naming the
// offending key.
ParsedConfig parse_config(const std::string &text);

// Emits a config text that parse_config maps back to the same
// ParsedConfig (all keys explicit, doubles at full precision).
std::string serialize_config(const ParsedConfig &config);

} // namespace kronsbl

#endif
