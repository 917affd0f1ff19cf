# SPDX-License-Identifier: Apache-2.0
#
# kronsbl — sparse Bayesian estimators over Kronecker-structured dictionaries
# Copyright (C) 2026 kronsbl contributors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Sparse Bayesian estimators over Kronecker-structured dictionaries.

The heavy lifting lives in the compiled extension ``kronsbl._core``; this
package re-exports its public surface. Complex matrices and vectors cross
the boundary as ``numpy`` ``complex128`` arrays.
"""

from kronsbl._core import (  # noqa: F401
    ChannelScenario,
    ConvergencePolicy,
    ESblHyper,
    EstimateReport,
    EstimatorKind,
    KronDictionary,
    Observation,
    ParsedConfig,
    PosteriorStats,
    Rng,
    SblHyper,
    Scatterer,
    SweepCell,
    SweepResult,
    SweepSpec,
    SweepVariable,
    __version__,
    array_response,
    dft_pilot,
    dft_transform,
    emit_csv,
    esbl_posterior_stats,
    esbl_update_weights_scales,
    eval_esbl_marginal_objective,
    eval_mesbl_joint_objective,
    eval_sbl_marginal_objective,
    format_csv,
    gauss_logdet_quadform,
    generate_channel,
    make_dictionary,
    mesbl_update_tau,
    mesbl_update_u,
    mesbl_update_w,
    nmse,
    noise_variance_from_snr_db,
    observe,
    parse_config,
    parse_csv,
    reconstruct_channel,
    run_esbl,
    run_least_squares,
    run_mesbl,
    run_sbl,
    run_sweep,
    sbl_posterior_stats,
    sbl_update_weights,
    selftest,
    serialize_config,
)

__all__ = [
    "ChannelScenario",
    "ConvergencePolicy",
    "ESblHyper",
    "EstimateReport",
    "EstimatorKind",
    "KronDictionary",
    "Observation",
    "ParsedConfig",
    "PosteriorStats",
    "Rng",
    "SblHyper",
    "Scatterer",
    "SweepCell",
    "SweepResult",
    "SweepSpec",
    "SweepVariable",
    "__version__",
    "array_response",
    "dft_pilot",
    "dft_transform",
    "emit_csv",
    "esbl_posterior_stats",
    "esbl_update_weights_scales",
    "eval_esbl_marginal_objective",
    "eval_mesbl_joint_objective",
    "eval_sbl_marginal_objective",
    "format_csv",
    "gauss_logdet_quadform",
    "generate_channel",
    "make_dictionary",
    "mesbl_update_tau",
    "mesbl_update_u",
    "mesbl_update_w",
    "nmse",
    "noise_variance_from_snr_db",
    "observe",
    "parse_config",
    "parse_csv",
    "reconstruct_channel",
    "run_esbl",
    "run_least_squares",
    "run_mesbl",
    "run_sbl",
    "run_sweep",
    "sbl_posterior_stats",
    "sbl_update_weights",
    "selftest",
    "serialize_config",
]
