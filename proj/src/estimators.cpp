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

#include "kronsbl/estimators.hpp"

#include "kronsbl/gram.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kronsbl
{

namespace
{

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start)
{
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

void check_state(const RVec &v, const char *name, Eigen::Index expected)
{
    if (v.size() != expected)
        throw std::invalid_argument(std::string(name) + " length " + std::to_string(v.size()) +
                                    " does not match operator columns " + std::to_string(expected));
    if (!v.allFinite() || v.minCoeff() <= 0.0)
        throw std::invalid_argument(std::string(name) + " must be finite and strictly positive");
}

void check_hyper(const SblHyper &hyper)
{
    if (hyper.alpha < 0.0 || hyper.beta < 0.0 || !std::isfinite(hyper.alpha) ||
        !std::isfinite(hyper.beta))
        throw std::invalid_argument("alpha and beta must be finite and nonnegative");
}

void check_hyper(const ESblHyper &hyper)
{
    if (!(hyper.nu > 0.0) || !std::isfinite(hyper.nu))
        throw std::invalid_argument("nu must be finite and strictly positive");
    if (hyper.theta < 0.0 || hyper.phi < 0.0 || !std::isfinite(hyper.theta) ||
        !std::isfinite(hyper.phi))
        throw std::invalid_argument("theta and phi must be finite and nonnegative");
}

void check_policy(const ConvergencePolicy &policy)
{
    if (!(policy.tol > 0.0) || !std::isfinite(policy.tol))
        throw std::invalid_argument("tol must be finite and strictly positive");
    if (policy.max_iter < 1)
        throw std::invalid_argument("max_iter must be at least 1");
}

RVec floored(RVec v)
{
    return v.cwiseMax(weight_floor);
}

PosteriorStats posterior_from_effective(const KronDictionary &dict, const RVec &effective,
                                        double sigma2, const CVec &z)
{
    const GramSystem gram = GramSystem::build(dict, effective, sigma2);
    const CVec b = dict.apply_adjoint(z);
    PosteriorStats stats;
    stats.mean = gram.solve(b) / sigma2;
    stats.cov_diag = gram.diag_of_inverse();
    return stats;
}

} // namespace

double rel_change(const RVec &next, const RVec &prev)
{
    const double denom = std::max(prev.cwiseAbs().maxCoeff(), weight_floor);
    return (next - prev).cwiseAbs().maxCoeff() / denom;
}

double rel_change(const CVec &next, const CVec &prev)
{
    const double denom = std::max(prev.cwiseAbs().maxCoeff(), weight_floor);
    return (next - prev).cwiseAbs().maxCoeff() / denom;
}

// --- baseline SBL ---------------------------------------------------------

PosteriorStats sbl_posterior_stats(const KronDictionary &dict, const RVec &weights, double sigma2,
                                   const CVec &z)
{
    check_state(weights, "weights", dict.cols());
    return posterior_from_effective(dict, weights, sigma2, z);
}

RVec sbl_update_weights(const PosteriorStats &stats)
{
    return floored(stats.mean.cwiseAbs2() + stats.cov_diag);
}

double eval_sbl_marginal_objective(const KronDictionary &dict, const RVec &weights, double sigma2,
                                   const CVec &z, const SblHyper &hyper)
{
    check_state(weights, "weights", dict.cols());
    check_hyper(hyper);
    const auto [logdet, quadform] = gauss_logdet_quadform(dict, weights, sigma2, z);
    double objective = -logdet - quadform;
    if (hyper.alpha != 0.0 || hyper.beta != 0.0)
        objective += (-(hyper.alpha + 1.0) * weights.array().log() -
                      hyper.beta * weights.array().inverse())
                         .sum();
    return objective;
}

EstimateReport run_sbl(const KronDictionary &dict, const CVec &z, double sigma2,
                       const SblHyper &hyper, const ConvergencePolicy &policy)
{
    check_hyper(hyper);
    check_policy(policy);
    const auto start = clock_type::now();

    RVec w = RVec::Ones(dict.cols());
    EstimateReport report;
    if (policy.record_objective)
        report.objective_trace.push_back(eval_sbl_marginal_objective(dict, w, sigma2, z, hyper));

    for (int it = 1; it <= policy.max_iter; ++it)
    {
        const PosteriorStats stats = sbl_posterior_stats(dict, w, sigma2, z);
        const RVec w_next = sbl_update_weights(stats);
        if (policy.record_objective)
            report.objective_trace.push_back(
                eval_sbl_marginal_objective(dict, w_next, sigma2, z, hyper));
        const double change = rel_change(w_next, w);
        w = w_next;
        report.iterations = it;
        if (change < policy.tol)
        {
            report.converged = true;
            break;
        }
    }

    report.u_hat = sbl_posterior_stats(dict, w, sigma2, z).mean;
    report.wall_time = seconds_since(start);
    return report;
}

// --- scaled SBL, marginal EM ----------------------------------------------

PosteriorStats esbl_posterior_stats(const KronDictionary &dict, const RVec &weights,
                                    const RVec &scales, double sigma2, const CVec &z)
{
    check_state(weights, "weights", dict.cols());
    check_state(scales, "scales", dict.cols());
    return posterior_from_effective(dict, scales.cwiseProduct(weights), sigma2, z);
}

std::pair<RVec, RVec> esbl_update_weights_scales(const PosteriorStats &stats, const RVec &scales,
                                                 const ESblHyper &hyper)
{
    check_hyper(hyper);
    if (stats.mean.size() != scales.size())
        throw std::invalid_argument("posterior stats and scales have mismatched lengths");
    const RVec r = stats.mean.cwiseAbs2() + stats.cov_diag;
    const RVec w =
        floored(((hyper.nu / 2.0 + (r.array() / scales.array())) / (hyper.nu / 2.0 + 2.0)).matrix());
    const RVec tau =
        floored(((hyper.phi + (r.array() / w.array())) / (hyper.theta + 2.0)).matrix());
    return {w, tau};
}

double eval_esbl_marginal_objective(const KronDictionary &dict, const RVec &weights,
                                    const RVec &scales, double sigma2, const CVec &z,
                                    const ESblHyper &hyper)
{
    check_state(weights, "weights", dict.cols());
    check_state(scales, "scales", dict.cols());
    check_hyper(hyper);
    const RVec effective = scales.cwiseProduct(weights);
    const auto [logdet, quadform] = gauss_logdet_quadform(dict, effective, sigma2, z);
    const double weight_prior = (-(hyper.nu + 2.0) / 2.0 * weights.array().log() -
                                 hyper.nu / 2.0 * weights.array().inverse())
                                    .sum();
    const double scale_prior = (-(hyper.theta + 1.0) * scales.array().log() -
                                hyper.phi * scales.array().inverse())
                                   .sum();
    return -logdet - quadform + weight_prior + scale_prior;
}

EstimateReport run_esbl(const KronDictionary &dict, const CVec &z, double sigma2,
                        const ESblHyper &hyper, const ConvergencePolicy &policy)
{
    check_hyper(hyper);
    check_policy(policy);
    const auto start = clock_type::now();

    RVec w = RVec::Ones(dict.cols());
    RVec tau = RVec::Ones(dict.cols());
    EstimateReport report;
    if (policy.record_objective)
        report.objective_trace.push_back(
            eval_esbl_marginal_objective(dict, w, tau, sigma2, z, hyper));

    for (int it = 1; it <= policy.max_iter; ++it)
    {
        const PosteriorStats stats = esbl_posterior_stats(dict, w, tau, sigma2, z);
        const auto [w_next, tau_next] = esbl_update_weights_scales(stats, tau, hyper);
        if (policy.record_objective)
            report.objective_trace.push_back(
                eval_esbl_marginal_objective(dict, w_next, tau_next, sigma2, z, hyper));
        const double change = std::max(rel_change(w_next, w), rel_change(tau_next, tau));
        w = w_next;
        tau = tau_next;
        report.iterations = it;
        if (change < policy.tol)
        {
            report.converged = true;
            break;
        }
    }

    report.u_hat = esbl_posterior_stats(dict, w, tau, sigma2, z).mean;
    report.wall_time = seconds_since(start);
    return report;
}

// --- scaled SBL, joint MAP --------------------------------------------------

CVec mesbl_update_u(const KronDictionary &dict, const RVec &weights, const RVec &scales,
                    double sigma2, const CVec &z)
{
    check_state(weights, "weights", dict.cols());
    check_state(scales, "scales", dict.cols());
    const GramSystem gram = GramSystem::build(dict, scales.cwiseProduct(weights), sigma2);
    return gram.solve(dict.apply_adjoint(z)) / sigma2;
}

RVec mesbl_update_w(const CVec &u, const RVec &scales, const ESblHyper &hyper)
{
    check_hyper(hyper);
    if (u.size() != scales.size())
        throw std::invalid_argument("coefficients and scales have mismatched lengths");
    return floored(((hyper.nu / 2.0 + (u.cwiseAbs2().array() / scales.array())) /
                    (hyper.nu / 2.0 + 2.0))
                       .matrix());
}

RVec mesbl_update_tau(const CVec &u, const RVec &weights, const ESblHyper &hyper)
{
    check_hyper(hyper);
    if (u.size() != weights.size())
        throw std::invalid_argument("coefficients and weights have mismatched lengths");
    return floored(
        ((hyper.phi + (u.cwiseAbs2().array() / weights.array())) / (hyper.theta + 2.0)).matrix());
}

double eval_mesbl_joint_objective(const KronDictionary &dict, const CVec &u, const RVec &weights,
                                  const RVec &scales, double sigma2, const CVec &z,
                                  const ESblHyper &hyper)
{
    check_state(weights, "weights", dict.cols());
    check_state(scales, "scales", dict.cols());
    check_hyper(hyper);
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw std::invalid_argument("sigma2 must be finite and strictly positive");
    if (u.size() != dict.cols())
        throw std::invalid_argument("coefficient vector length does not match operator columns");

    const double residual = (z - dict.apply(u)).squaredNorm();
    const RVec effective = scales.cwiseProduct(weights);
    const double coeff_quad = (u.cwiseAbs2().array() / effective.array()).sum();
    const double coeff_logdet = effective.array().log().sum();
    const double weight_prior = (-(hyper.nu + 2.0) / 2.0 * weights.array().log() -
                                 hyper.nu / 2.0 * weights.array().inverse())
                                    .sum();
    const double scale_prior = (-(hyper.theta + 1.0) * scales.array().log() -
                                hyper.phi * scales.array().inverse())
                                   .sum();
    return -residual / sigma2 - coeff_logdet - coeff_quad + weight_prior + scale_prior;
}

EstimateReport run_mesbl(const KronDictionary &dict, const CVec &z, double sigma2,
                         const ESblHyper &hyper, const ConvergencePolicy &policy)
{
    check_hyper(hyper);
    check_policy(policy);
    const auto start = clock_type::now();

    RVec w = RVec::Ones(dict.cols());
    RVec tau = RVec::Ones(dict.cols());
    CVec u = CVec::Zero(dict.cols());
    EstimateReport report;
    if (policy.record_objective)
        report.objective_trace.push_back(
            eval_mesbl_joint_objective(dict, u, w, tau, sigma2, z, hyper));

    for (int it = 1; it <= policy.max_iter; ++it)
    {
        const CVec u_next = mesbl_update_u(dict, w, tau, sigma2, z);
        const RVec w_next = mesbl_update_w(u_next, tau, hyper);
        const RVec tau_next = mesbl_update_tau(u_next, w_next, hyper);
        if (policy.record_objective)
            report.objective_trace.push_back(
                eval_mesbl_joint_objective(dict, u_next, w_next, tau_next, sigma2, z, hyper));
        const double change = std::max({rel_change(w_next, w), rel_change(tau_next, tau),
                                        rel_change(u_next, u)});
        u = u_next;
        w = w_next;
        tau = tau_next;
        report.iterations = it;
        if (change < policy.tol)
        {
            report.converged = true;
            break;
        }
    }

    report.u_hat = u;
    report.wall_time = seconds_since(start);
    return report;
}

// --- least squares -----------------------------------------------------------

EstimateReport run_least_squares(const KronDictionary &dict, const CVec &z, double sigma2)
{
    const auto start = clock_type::now();
    EstimateReport report;
    report.u_hat = mesbl_update_u(dict, RVec::Ones(dict.cols()), RVec::Ones(dict.cols()), sigma2, z);
    report.iterations = 1;
    report.converged = true;
    report.wall_time = seconds_since(start);
    return report;
}

} // namespace kronsbl
