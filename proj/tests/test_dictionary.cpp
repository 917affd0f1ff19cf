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

#include "kronsbl/dictionary.hpp"
#include "kronsbl/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using namespace kronsbl;

namespace
{

CMat random_cmat(Rng &rng, Eigen::Index rows, Eigen::Index cols)
{
    CMat m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            m(r, c) = rng.cgaussian(1.0);
    return m;
}

CVec random_cvec(Rng &rng, Eigen::Index n)
{
    return random_cmat(rng, n, 1);
}

double rel(const CVec &got, const CVec &want)
{
    return (got - want).norm() / std::max(want.norm(), 1e-300);
}

} // namespace

TEST_CASE("identity factors apply as the identity", "[dictionary]")
{
    CMat P(1, 1), F = CMat::Identity(2, 2);
    P << cxd(1, 0);
    const KronDictionary dict(P, F);
    CVec x(2);
    x << cxd(1, 0), cxd(0, 2);
    REQUIRE(rel(dict.apply(x), x) < 1e-15);
    REQUIRE(rel(dict.apply_adjoint(x), x) < 1e-15);
}

TEST_CASE("scalar pilot scales the output", "[dictionary]")
{
    CMat P(1, 1), F = CMat::Identity(2, 2);
    P << cxd(2, 0);
    const KronDictionary dict(P, F);
    CVec x(2);
    x << cxd(1, 0), cxd(0, 0);
    CVec want(2);
    want << cxd(2, 0), cxd(0, 0);
    REQUIRE(rel(dict.apply(x), want) < 1e-15);
}

TEST_CASE("adjoint of zero is zero", "[dictionary]")
{
    Rng rng(3);
    const KronDictionary dict(random_cmat(rng, 2, 3), random_cmat(rng, 4, 4));
    REQUIRE(dict.apply_adjoint(CVec::Zero(dict.rows())).norm() == 0.0);
}

TEST_CASE("matrix-free products match the dense operator", "[dictionary]")
{
    Rng rng(11);
    const KronDictionary dict(random_cmat(rng, 2, 3), random_cmat(rng, 4, 4));
    const CMat A = dict.dense();
    REQUIRE(A.rows() == 4 * 3);
    REQUIRE(A.cols() == 4 * 2);
    for (int rep = 0; rep < 5; ++rep)
    {
        const CVec x = random_cvec(rng, dict.cols());
        const CVec y = random_cvec(rng, dict.rows());
        REQUIRE(rel(dict.apply(x), A * x) < 1e-12);
        REQUIRE(rel(dict.apply_adjoint(y), A.adjoint() * y) < 1e-12);
    }
}

TEST_CASE("dense expansion follows the Kronecker entry formula", "[dictionary]")
{
    Rng rng(5);
    const int M = 3, N = 4, K = 2, Q = 2;
    const CMat P = random_cmat(rng, K, N);
    const CMat F = random_cmat(rng, M, Q);
    const CMat A = KronDictionary(P, F).dense();
    for (int k = 0; k < K; ++k)
        for (int q = 0; q < Q; ++q)
            for (int n = 0; n < N; ++n)
                for (int m = 0; m < M; ++m)
                    REQUIRE(std::abs(A(n * M + m, k * Q + q) - F(m, q) * P(k, n)) < 1e-15);
}

TEST_CASE("Gram of the operator factors with a conjugated pilot Gram", "[dictionary]")
{
    Rng rng(17);
    const int M = 3, N = 5, K = 3, Q = 2;
    const KronDictionary dict(random_cmat(rng, K, N), random_cmat(rng, M, Q));
    const CMat A = dict.dense();
    const CMat gram = A.adjoint() * A;

    auto kron = [&](const CMat &Gp, const CMat &Gf) {
        CMat out(K * Q, K * Q);
        for (int k1 = 0; k1 < K; ++k1)
            for (int k2 = 0; k2 < K; ++k2)
                out.block(k1 * Q, k2 * Q, Q, Q) = Gp(k1, k2) * Gf;
        return out;
    };

    // The cached factors reproduce AᴴA ...
    REQUIRE((kron(dict.gram_pilot(), dict.gram_transform()) - gram).norm() / gram.norm() < 1e-12);

    // ... and the conjugate on the pilot factor is load-bearing: for a
    // complex pilot with non-real P·Pᴴ, the unconjugated form is wrong.
    const CMat unconjugated = dict.gram_pilot().conjugate();
    REQUIRE((kron(unconjugated, dict.gram_transform()) - gram).norm() / gram.norm() > 1e-3);
}

TEST_CASE("orthogonal transform reduces the Gram action to the pilot factor", "[dictionary]")
{
    Rng rng(23);
    const int M = 4, K = 2, N = 6;
    CMat F(M, M); // scaled DFT-like orthogonal columns: FᴴF = c·I
    for (int m = 0; m < M; ++m)
        for (int q = 0; q < M; ++q)
        {
            const double phase = -2.0 * 3.14159265358979323846 * m * q / M;
            F(m, q) = 1.5 * cxd(std::cos(phase), std::sin(phase));
        }
    const double c = std::real((F.adjoint() * F)(0, 0));
    const KronDictionary dict(random_cmat(rng, K, N), F);
    const CVec x = random_cvec(rng, dict.cols());
    const CVec via_operator = dict.apply_adjoint(dict.apply(x));

    CVec via_factors(dict.cols());
    const CMat &Gp = dict.gram_pilot();
    for (int k1 = 0; k1 < K; ++k1)
    {
        via_factors.segment(k1 * M, M).setZero();
        for (int k2 = 0; k2 < K; ++k2)
            via_factors.segment(k1 * M, M) += Gp(k1, k2) * c * x.segment(k2 * M, M);
    }
    REQUIRE(rel(via_operator, via_factors) < 1e-12);
}

TEST_CASE("construction and application reject invalid input", "[dictionary]")
{
    Rng rng(29);
    REQUIRE_THROWS_AS(KronDictionary(CMat(0, 0), CMat::Identity(2, 2)), std::invalid_argument);
    CMat bad = CMat::Identity(2, 2);
    bad(0, 0) = cxd(std::numeric_limits<double>::quiet_NaN(), 0);
    REQUIRE_THROWS_AS(KronDictionary(bad, CMat::Identity(2, 2)), std::invalid_argument);

    const KronDictionary dict(random_cmat(rng, 2, 3), random_cmat(rng, 4, 4));
    REQUIRE_THROWS_AS(dict.apply(CVec::Zero(dict.cols() + 1)), std::invalid_argument);
    REQUIRE_THROWS_AS(dict.apply_adjoint(CVec::Zero(dict.rows() - 1)), std::invalid_argument);
}
