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

#ifndef KRONSBL_ESTIMATORS_HPP
#define KRONSBL_ESTIMATORS_HPP

#include "kronsbl/dictionary.hpp"
#include "kronsbl/types.hpp"

#include <utility>
#include <vector>

namespace kronsbl
{

// Inverse-gamma hyperparameters of the baseline SBL weight prior. The
// defaults (0, 0) correspond to the scale-invariant improper prior; with
// the defaults the weight update is the exact marginal-likelihood EM step
// and the recorded objective is guaranteed nondecreasing.
struct SblHyper
{
    double alpha = 0.0;
    double beta = 0.0;
};

// Hyperparameters of the hierarchical t-prior used by the scaled
// estimators: nu is the degrees of freedom of the weight prior, (theta,
// phi) parameterize the inverse-gamma prior on the per-coefficient scales.
struct ESblHyper
{
    double nu = 1.0;
    double theta = 0.01;
    double phi = 0.01;
};

// Stopping rule shared by all iterative estimators: stop when the maximum
// over parameter vectors of the relative l-inf change drops below tol, or
// after max_iter sweeps. record_objective enables the per-iteration
// objective trace (costs one extra log-determinant per iteration).
struct ConvergencePolicy
{
    double tol = 1e-6;
    int max_iter = 500;
    bool record_objective = false;
};

// Posterior mean and covariance diagonal of the coefficient vector under a
// fixed Gaussian prior: mean = (1/σ²)·S⁻¹·Aᴴz, cov_diag = diag(S⁻¹).
struct PosteriorStats
{
    CVec mean;
    RVec cov_diag;
};

struct EstimateReport
{
    CVec u_hat;
    int iterations = 0;
    // Empty unless record_objective: the objective at the starting point
    // followed by one entry per iteration (iterations + 1 values total).
    std::vector<double> objective_trace;
    bool converged = false;
    double wall_time = 0.0; // seconds
};

// Relative l-inf change between successive parameter vectors:
// ‖next − prev‖∞ / max(‖prev‖∞, floor).
double rel_change(const RVec &next, const RVec &prev);
double rel_change(const CVec &next, const CVec &prev);

// --- baseline SBL (marginal-likelihood EM) ------------------------------

PosteriorStats sbl_posterior_stats(const KronDictionary &dict, const RVec &weights, double sigma2,
                                   const CVec &z);

// w_j ← |mean_j|² + cov_diag_j, floored.
RVec sbl_update_weights(const PosteriorStats &stats);

// log marginal objective −log det V − zᴴV⁻¹z with V = A·Diag(w)·Aᴴ + σ²I,
// plus the inverse-gamma log-prior terms −(α+1)·log w_j − β/w_j when
// (α, β) ≠ (0, 0). Note: the weight update above is the plain EM step and
// therefore ascends this objective exactly at the default (0, 0).
double eval_sbl_marginal_objective(const KronDictionary &dict, const RVec &weights, double sigma2,
                                   const CVec &z, const SblHyper &hyper = {});

EstimateReport run_sbl(const KronDictionary &dict, const CVec &z, double sigma2,
                       const SblHyper &hyper = {}, const ConvergencePolicy &policy = {});

// --- scaled SBL (marginal-posterior EM over weights and scales) ---------

// Same posterior as sbl_posterior_stats with effective weights τ_j·w_j.
PosteriorStats esbl_posterior_stats(const KronDictionary &dict, const RVec &weights,
                                    const RVec &scales, double sigma2, const CVec &z);

// With r_j = |mean_j|² + cov_diag_j:
//     w_j ← (ν/2 + r_j/τ_j) / (ν/2 + 2)
//     τ_j ← (φ + r_j/w_j) / (θ + 2)      — uses the already-updated w_j.
// Returns (weights, scales), both floored.
std::pair<RVec, RVec> esbl_update_weights_scales(const PosteriorStats &stats, const RVec &scales,
                                                 const ESblHyper &hyper);

// log marginal-posterior objective: −log det Ṽ − zᴴṼ⁻¹z with effective
// weights τ⊙w, plus the weight prior −Σ[(ν+2)/2·log w_j + ν/(2w_j)] and
// the scale prior −Σ[(θ+1)·log τ_j + φ/τ_j].
double eval_esbl_marginal_objective(const KronDictionary &dict, const RVec &weights,
                                    const RVec &scales, double sigma2, const CVec &z,
                                    const ESblHyper &hyper);

EstimateReport run_esbl(const KronDictionary &dict, const CVec &z, double sigma2,
                        const ESblHyper &hyper = {}, const ConvergencePolicy &policy = {});

// --- scaled SBL, joint-MAP variant (alternating coordinate ascent) ------

// u ← (1/σ²)·S⁻¹·Aᴴz with S = (1/σ²)AᴴA + Diag(τ⊙w)⁻¹. Identical linear
// algebra to esbl_posterior_stats' mean, without the diag-of-inverse cost.
CVec mesbl_update_u(const KronDictionary &dict, const RVec &weights, const RVec &scales,
                    double sigma2, const CVec &z);

// w_j ← (ν/2 + |u_j|²/τ_j) / (ν/2 + 2), floored.
RVec mesbl_update_w(const CVec &u, const RVec &scales, const ESblHyper &hyper);

// τ_j ← (φ + |u_j|²/w_j) / (θ + 2), floored; expects the just-updated w.
RVec mesbl_update_tau(const CVec &u, const RVec &weights, const ESblHyper &hyper);

// log joint-posterior objective:
// −(1/σ²)‖z − Au‖² − Σ log(τ_j w_j) − Σ |u_j|²/(τ_j w_j)
// − Σ[(ν+2)/2·log w_j + ν/(2w_j)] − Σ[(θ+1)·log τ_j + φ/τ_j].
// Each of the three updates above is the exact coordinate maximizer, so
// the objective is nondecreasing after every individual update.
double eval_mesbl_joint_objective(const KronDictionary &dict, const CVec &u, const RVec &weights,
                                  const RVec &scales, double sigma2, const CVec &z,
                                  const ESblHyper &hyper);

EstimateReport run_mesbl(const KronDictionary &dict, const CVec &z, double sigma2,
                         const ESblHyper &hyper = {}, const ConvergencePolicy &policy = {});

// --- regularized least squares baseline ----------------------------------

// u_hat = (AᴴA + σ²I)⁻¹·Aᴴz via the same structured solver with unit
// weights; iterations = 1.
EstimateReport run_least_squares(const KronDictionary &dict, const CVec &z, double sigma2);

} // namespace kronsbl

#endif
