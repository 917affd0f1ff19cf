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

#ifndef KRONSBL_SWEEP_HPP
#define KRONSBL_SWEEP_HPP

#include "kronsbl/channel.hpp"
#include "kronsbl/estimators.hpp"
#include "kronsbl/types.hpp"

#include <string>
#include <vector>

namespace kronsbl
{

// Scenario field varied across a sweep.
enum class SweepVariable
{
    snr_db,
    pilot_length,
    num_antennas,
    num_scatterers,
};

// Estimators selectable in a sweep. Declared in alphabetical order of
// their names so iterating the enum yields the canonical CSV row order.
enum class EstimatorKind
{
    esbl,
    ls,
    mesbl,
    sbl,
};

std::string to_string(SweepVariable variable);
std::string to_string(EstimatorKind kind);
SweepVariable sweep_variable_from_name(const std::string &name);
EstimatorKind estimator_from_name(const std::string &name);

// Full description of one Monte Carlo experiment: a base scenario, the
// variable and grid to sweep, the estimators to compare, and shared
// hyperparameters / convergence policy.
struct SweepSpec
{
    ChannelScenario base;
    SweepVariable variable = SweepVariable::snr_db;
    std::vector<double> values;
    std::vector<EstimatorKind> estimators = {EstimatorKind::esbl, EstimatorKind::ls,
                                             EstimatorKind::mesbl, EstimatorKind::sbl};
    int num_trials = 1000;
    SblHyper sbl_hyper;
    ESblHyper esbl_hyper;
    ConvergencePolicy policy;

    // Wall time is measured per run but emitted as 0 in the CSV unless
    // this is set: wall clocks are nondeterministic and would break the
    // byte-identical-output guarantee.
    bool emit_walltime = false;

    // The default aggregate is the ratio of summed error energy to summed
    // channel energy. Since every generated channel is normalized to the
    // same energy the two conventions coincide on simulated data, but the
    // per-trial-ratio mean is available for sensitivity checks.
    bool nmse_mean_of_ratios = false;

    // Throws std::invalid_argument on empty/unsorted values, bad trial
    // count, duplicate estimators, or an invalid base scenario.
    void validate() const;
};

// Aggregates for one (sweep value, estimator) cell.
struct SweepCell
{
    double value = 0.0;
    EstimatorKind estimator = EstimatorKind::sbl;
    double nmse_mean = 0.0;
    double nmse_stderr = 0.0;
    double iters_mean = 0.0;
    double walltime_mean = 0.0;
    int trials = 0;   // successful trials aggregated into this cell
    int failures = 0; // trials excluded because the estimator threw
};

struct SweepResult
{
    SweepVariable variable = SweepVariable::snr_db;
    // Value-major, estimator-alphabetical order (the CSV row order).
    std::vector<SweepCell> cells;
    bool emit_walltime = false;
};

// Batch NMSE: Σ_t ‖Ĥ_t − H_t‖²_F / Σ_t ‖H_t‖²_F. Throws on an empty batch
// or mismatched shapes.
double nmse(const std::vector<CMat> &estimates, const std::vector<CMat> &truths);

// Runs the Monte Carlo experiment. Per (value, trial): generate a channel,
// observe it once, and hand the identical observation to every selected
// estimator (paired comparison). Deterministic given spec.base.seed: the
// channel stream is keyed by trial index alone (so e.g. an SNR sweep sees
// the same channels at every SNR) and the noise stream by (value index,
// trial). A trial where an estimator throws is excluded from that
// estimator's cell and counted in its failures; other estimators keep the
// trial.
SweepResult run_sweep(const SweepSpec &spec);

// CSV text for a result: fixed header, one row per cell, value-major and
// estimator-alphabetical, all numbers with up to 12 significant digits.
std::string format_csv(const SweepResult &result);

// Parses text produced by format_csv back into a SweepResult (fresh
// failure counts are not part of the schema and read back as zero).
// Throws std::invalid_argument on schema violations.
SweepResult parse_csv(const std::string &text);

// Writes format_csv(result) to path atomically: the text goes to a
// temporary file in the same directory which is renamed over the target,
// so a failed run never leaves a partial file. Throws std::runtime_error
// when the path is unwritable.
void emit_csv(const SweepResult &result, const std::string &path);

} // namespace kronsbl

#endif
