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

#include "kronsbl/selftest.hpp"

#include "kronsbl/channel.hpp"
#include "kronsbl/dictionary.hpp"
#include "kronsbl/estimators.hpp"
#include "kronsbl/gram.hpp"
#include "kronsbl/rng.hpp"
#include "kronsbl/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace kronsbl
{

namespace
{

class Reporter
{
  public:
    explicit Reporter(std::ostream &out) : out_(out) {}

    void check(bool ok, const std::string &label, const std::string &detail = "")
    {
        if (ok)
            out_ << "[ ok ] " << label << "\n";
        else
        {
            out_ << "[FAIL] " << label << (detail.empty() ? "" : ": " + detail) << "\n";
            all_ok_ = false;
        }
    }

    bool all_ok() const { return all_ok_; }

  private:
    std::ostream &out_;
    bool all_ok_ = true;
};

CMat random_cmat(Rng &rng, Eigen::Index rows, Eigen::Index cols)
{
    CMat m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            m(r, c) = rng.cgaussian(1.0);
    return m;
}

RVec random_weights(Rng &rng, Eigen::Index n)
{
    RVec w(n);
    for (Eigen::Index j = 0; j < n; ++j)
        w(j) = rng.uniform(0.5, 2.0);
    return w;
}

double rel_err(const CVec &got, const CVec &want)
{
    return (got - want).norm() / std::max(want.norm(), 1e-300);
}

double rel_err(double got, double want)
{
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Dense QK×QK regularized Gram: (AᴴA)/σ² + Diag(w̃)⁻¹, built from the
// materialized dictionary — the oracle the structured paths must match.
CMat dense_gram(const KronDictionary &dict, const RVec &weights, double sigma2)
{
    const CMat A = dict.dense();
    CMat S = (A.adjoint() * A) / sigma2;
    S += weights.cwiseInverse().cast<cxd>().asDiagonal();
    return S;
}

double dense_logdet(const CMat &S)
{
    Eigen::SelfAdjointEigenSolver<CMat> es(S);
    return es.eigenvalues().array().log().sum();
}

bool check_gram_against_dense(Reporter &rep, const std::string &label, const KronDictionary &dict,
                              const RVec &weights, double sigma2, GramStructure expected, Rng &rng)
{
    const GramSystem gram = build_gram(dict, weights, sigma2);
    rep.check(gram.structure() == expected, label + ": structure detection",
              std::string("detected ") + to_string(gram.structure()) + ", expected " +
                  to_string(expected));

    const CMat S = dense_gram(dict, weights, sigma2);
    const CVec rhs = random_cmat(rng, S.rows(), 1);
    const CVec x_fast = gram.solve(rhs);
    const CVec x_ref = S.partialPivLu().solve(rhs);
    rep.check(rel_err(x_fast, x_ref) < 1e-10, label + ": solve vs dense");

    const RVec d_fast = gram.diag_of_inverse();
    const RVec d_ref = S.inverse().diagonal().real();
    rep.check((d_fast - d_ref).norm() / std::max(d_ref.norm(), 1e-300) < 1e-10,
              label + ": diag-of-inverse vs dense");

    rep.check(rel_err(gram.logdet(), dense_logdet(S)) < 1e-8, label + ": logdet vs dense");

    // Marginal-likelihood pieces against the materialized MN×MN covariance
    // V = σ²·I + A·Diag(w̃)·Aᴴ.
    const CMat A = dict.dense();
    CMat V = (A * weights.cast<cxd>().asDiagonal() * A.adjoint());
    V += sigma2 * CMat::Identity(A.rows(), A.rows());
    const CVec z = random_cmat(rng, A.rows(), 1);
    const auto [ld, quad] = gauss_logdet_quadform(dict, weights, sigma2, z);
    rep.check(rel_err(ld, dense_logdet(V)) < 1e-8, label + ": covariance logdet vs dense");
    rep.check(rel_err(quad, std::real(z.dot(V.partialPivLu().solve(z)))) < 1e-10,
              label + ": covariance quadform vs dense");

    // Posterior statistics: mean (1/σ²)S⁻¹Aᴴz and covariance diagonal.
    const PosteriorStats stats = sbl_posterior_stats(dict, weights, sigma2, z);
    const CVec mean_ref = S.partialPivLu().solve(A.adjoint() * z) / sigma2;
    rep.check(rel_err(stats.mean, mean_ref) < 1e-10, label + ": posterior mean vs dense");
    rep.check((stats.cov_diag - d_ref).norm() / std::max(d_ref.norm(), 1e-300) < 1e-10,
              label + ": posterior covariance diagonal vs dense");
    return true;
}

} // namespace

bool selftest(std::ostream &out)
{
    Reporter rep(out);
    Rng rng(20260816);

    // --- Kronecker reshape identities vs the materialized operator ------
    {
        const struct
        {
            int M, N, K, Q;
        } dims[] = {{3, 4, 2, 3}, {2, 5, 3, 4}, {4, 4, 4, 2}};
        for (const auto &d : dims)
        {
            const KronDictionary dict(random_cmat(rng, d.K, d.N), random_cmat(rng, d.M, d.Q));
            const CMat A = dict.dense();
            const CVec x = random_cmat(rng, dict.cols(), 1);
            const CVec y = random_cmat(rng, dict.rows(), 1);
            std::ostringstream label;
            label << "reshape identities (M=" << d.M << ",N=" << d.N << ",K=" << d.K
                  << ",Q=" << d.Q << ")";
            rep.check(rel_err(dict.apply(x), A * x) < 1e-12 &&
                          rel_err(dict.apply_adjoint(y), A.adjoint() * y) < 1e-12,
                      label.str());

            // AᴴA must factor with the pilot Gram conjugated.
            CMat kron(dict.cols(), dict.cols());
            const CMat &Gp = dict.gram_pilot();
            const CMat &Gf = dict.gram_transform();
            for (int k1 = 0; k1 < d.K; ++k1)
                for (int k2 = 0; k2 < d.K; ++k2)
                    kron.block(k1 * d.Q, k2 * d.Q, d.Q, d.Q) = Gp(k1, k2) * Gf;
            rep.check((kron - A.adjoint() * A).norm() / (A.adjoint() * A).norm() < 1e-12,
                      label.str() + ": Gram factorization");
        }
    }

    // --- every structured Gram path vs the dense oracle -----------------
    {
        const int M = 4, N = 5, K = 2, Q = 3;
        const double sigma2 = 0.3;

        // Row/column scalings keep the factor Grams diagonal but unequal,
        // so the diagonal fast path sees non-uniform entries.
        CMat P_orth = dft_pilot(K, N);
        for (int k = 0; k < K; ++k)
            P_orth.row(k) *= 0.5 + k;
        CMat F_orth = dft_transform(M).leftCols(Q);
        for (int q = 0; q < Q; ++q)
            F_orth.col(q) *= 1.0 + 0.25 * q;

        const CMat P_rand = random_cmat(rng, K, N);
        const CMat F_rand = random_cmat(rng, M, Q);

        check_gram_against_dense(rep, "diagonal gram", KronDictionary(P_orth, F_orth),
                                 random_weights(rng, Q * K), sigma2, GramStructure::diagonal, rng);
        check_gram_against_dense(rep, "block-diagonal gram", KronDictionary(P_orth, F_rand),
                                 random_weights(rng, Q * K), sigma2,
                                 GramStructure::block_diagonal, rng);
        check_gram_against_dense(rep, "diagonal-blocks gram", KronDictionary(P_rand, F_orth),
                                 random_weights(rng, Q * K), sigma2,
                                 GramStructure::diagonal_blocks, rng);
        check_gram_against_dense(rep, "dense gram", KronDictionary(P_rand, F_rand),
                                 random_weights(rng, Q * K), sigma2, GramStructure::dense, rng);
    }

    // --- objective ascent on random instances ---------------------------
    {
        const struct
        {
            int M, N, K, Q;
        } dims[] = {{6, 5, 3, 4}, {4, 6, 2, 5}, {5, 4, 4, 3}};
        const ConvergencePolicy policy{1e-8, 60, true};
        const double slack = 1e-9;
        int violations_sbl = 0, violations_esbl = 0, violations_mesbl = 0;
        for (int inst = 0; inst < 8; ++inst)
        {
            const auto &d = dims[inst % 3];
            const KronDictionary dict(random_cmat(rng, d.K, d.N), random_cmat(rng, d.M, d.Q));
            CVec u_true = CVec::Zero(dict.cols());
            u_true(static_cast<Eigen::Index>(rng.uniform(0.0, 0.999) * dict.cols())) =
                rng.cgaussian(1.0);
            u_true(static_cast<Eigen::Index>(rng.uniform(0.0, 0.999) * dict.cols())) =
                rng.cgaussian(1.0);
            CVec z = dict.apply(u_true);
            for (Eigen::Index i = 0; i < z.size(); ++i)
                z(i) += rng.cgaussian(0.01);
            const double sigma2 = 0.01;

            auto count_drops = [&](const std::vector<double> &trace) {
                int drops = 0;
                for (std::size_t i = 1; i < trace.size(); ++i)
                    if (trace[i] < trace[i - 1] - slack)
                        ++drops;
                return drops;
            };
            violations_sbl += count_drops(run_sbl(dict, z, sigma2, {}, policy).objective_trace);
            violations_esbl += count_drops(run_esbl(dict, z, sigma2, {}, policy).objective_trace);
            violations_mesbl += count_drops(run_mesbl(dict, z, sigma2, {}, policy).objective_trace);
        }
        rep.check(violations_sbl == 0, "marginal objective ascent (8 random instances)",
                  std::to_string(violations_sbl) + " descending steps");
        rep.check(violations_esbl == 0, "scaled marginal objective ascent (8 random instances)",
                  std::to_string(violations_esbl) + " descending steps");
        rep.check(violations_mesbl == 0, "joint objective ascent (8 random instances)",
                  std::to_string(violations_mesbl) + " descending steps");
    }

    // --- sweep determinism and CSV shape --------------------------------
    {
        SweepSpec spec;
        spec.base.num_antennas = 8;
        spec.base.pilot_length = 4;
        spec.base.num_users = 2;
        spec.base.num_scatterers = 1;
        spec.base.seed = 7;
        spec.variable = SweepVariable::snr_db;
        spec.values = {0.0, 10.0};
        spec.num_trials = 3;

        const SweepResult r1 = run_sweep(spec);
        const SweepResult r2 = run_sweep(spec);
        const std::string csv1 = format_csv(r1);
        rep.check(csv1 == format_csv(r2), "sweep determinism (identical CSV bytes)");
        rep.check(r1.cells.size() == 8, "sweep cell cardinality (2 values x 4 estimators)",
                  std::to_string(r1.cells.size()) + " cells");
        bool clean = true;
        for (const SweepCell &cell : r1.cells)
            clean = clean && cell.trials == spec.num_trials && cell.failures == 0 &&
                    cell.nmse_mean >= 0.0;
        rep.check(clean, "sweep trial accounting (no failures, NMSE >= 0)");

        const SweepResult parsed = parse_csv(csv1);
        bool round_trip = parsed.cells.size() == r1.cells.size();
        for (std::size_t i = 0; round_trip && i < parsed.cells.size(); ++i)
            round_trip = parsed.cells[i].estimator == r1.cells[i].estimator &&
                         rel_err(parsed.cells[i].nmse_mean, r1.cells[i].nmse_mean) < 1e-9;
        rep.check(round_trip, "CSV round-trip parse");
    }

    return rep.all_ok();
}

} // namespace kronsbl
