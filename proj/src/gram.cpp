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

#include "kronsbl/gram.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace kronsbl
{

namespace
{

// A Gram factor counts as diagonal when its off-diagonal Frobenius mass is
// at most 1e-10 times its diagonal mass; DFT factors are exactly orthogonal
// up to rounding, so the tolerance only has to absorb round-off.
bool is_effectively_diagonal(const CMat &m)
{
    const double diag_mass = m.diagonal().norm();
    double off_sq = m.squaredNorm() - m.diagonal().squaredNorm();
    if (off_sq < 0.0)
        off_sq = 0.0;
    return std::sqrt(off_sq) <= 1e-10 * diag_mass;
}

void check_pivots(const Eigen::LDLT<CMat> &ldlt)
{
    double smallest = std::numeric_limits<double>::quiet_NaN();
    if (ldlt.info() == Eigen::Success)
        smallest = ldlt.vectorD().real().minCoeff();
    if (!(smallest > 0.0) || !std::isfinite(smallest))
    {
        std::ostringstream msg;
        msg << "Gram matrix numerically singular: smallest pivot = " << smallest;
        throw std::runtime_error(msg.str());
    }
}

double ldlt_logdet(const Eigen::LDLT<CMat> &ldlt)
{
    // det S = Π pivots: L is unit-triangular and the permutation is a
    // similarity, so only D contributes.
    return ldlt.vectorD().real().array().log().sum();
}

} // namespace

const char *to_string(GramStructure s)
{
    switch (s)
    {
    case GramStructure::diagonal:
        return "diagonal";
    case GramStructure::block_diagonal:
        return "block_diagonal";
    case GramStructure::diagonal_blocks:
        return "diagonal_blocks";
    case GramStructure::dense:
        return "dense";
    }
    return "unknown";
}

struct GramSystem::Impl
{
    Eigen::Index Q = 0;
    Eigen::Index K = 0;
    RVec diag;                              // diagonal structure: S_jj
    std::vector<Eigen::LDLT<CMat>> blocks;  // factorized blocks otherwise
};

GramSystem::GramSystem(GramStructure s, double sigma2, Eigen::Index size,
                       std::unique_ptr<Impl> impl)
    : structure_(s), sigma2_(sigma2), size_(size), impl_(std::move(impl))
{
}

GramSystem::~GramSystem() = default;
GramSystem::GramSystem(GramSystem &&) noexcept = default;
GramSystem &GramSystem::operator=(GramSystem &&) noexcept = default;

GramSystem GramSystem::build(const KronDictionary &dict, const RVec &effective_weights,
                             double sigma2)
{
    const Eigen::Index Q = dict.transform_size();
    const Eigen::Index K = dict.num_users();
    const Eigen::Index n = Q * K;

    if (effective_weights.size() != n)
        throw std::invalid_argument("effective weights length " +
                                    std::to_string(effective_weights.size()) +
                                    " does not match operator columns " + std::to_string(n));
    if (!effective_weights.allFinite() || effective_weights.minCoeff() <= 0.0)
        throw std::invalid_argument("effective weights must be finite and strictly positive");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw std::invalid_argument("sigma2 must be finite and strictly positive");

    const CMat &gp = dict.gram_pilot();     // conj(P·Pᴴ), K×K
    const CMat &gf = dict.gram_transform(); // Fᴴ·F, Q×Q
    const bool gp_diag = is_effectively_diagonal(gp);
    const bool gf_diag = is_effectively_diagonal(gf);

    auto impl = std::make_unique<Impl>();
    impl->Q = Q;
    impl->K = K;

    if (gp_diag && gf_diag)
    {
        RVec d(n);
        for (Eigen::Index k = 0; k < K; ++k)
            for (Eigen::Index q = 0; q < Q; ++q)
                d(k * Q + q) = std::real(gp(k, k)) * std::real(gf(q, q)) / sigma2 +
                               1.0 / effective_weights(k * Q + q);
        const double smallest = d.minCoeff();
        if (!(smallest > 0.0) || !std::isfinite(smallest))
        {
            std::ostringstream msg;
            msg << "Gram matrix numerically singular: smallest pivot = " << smallest;
            throw std::runtime_error(msg.str());
        }
        impl->diag = std::move(d);
        return GramSystem(GramStructure::diagonal, sigma2, n, std::move(impl));
    }

    if (gp_diag)
    {
        // K contiguous Q×Q blocks: block k = (gp_kk/σ²)·FᴴF + Diag(1/w̃ segment).
        impl->blocks.reserve(static_cast<std::size_t>(K));
        for (Eigen::Index k = 0; k < K; ++k)
        {
            CMat block = (std::real(gp(k, k)) / sigma2) * gf;
            for (Eigen::Index q = 0; q < Q; ++q)
                block(q, q) += 1.0 / effective_weights(k * Q + q);
            impl->blocks.emplace_back(block);
            check_pivots(impl->blocks.back());
        }
        return GramSystem(GramStructure::block_diagonal, sigma2, n, std::move(impl));
    }

    if (gf_diag)
    {
        // Q independent K×K blocks with stride Q: block q couples indices
        // {k·Q + q : k = 0..K−1}.
        impl->blocks.reserve(static_cast<std::size_t>(Q));
        for (Eigen::Index q = 0; q < Q; ++q)
        {
            CMat block = (std::real(gf(q, q)) / sigma2) * gp;
            for (Eigen::Index k = 0; k < K; ++k)
                block(k, k) += 1.0 / effective_weights(k * Q + q);
            impl->blocks.emplace_back(block);
            check_pivots(impl->blocks.back());
        }
        return GramSystem(GramStructure::diagonal_blocks, sigma2, n, std::move(impl));
    }

    CMat s(n, n);
    for (Eigen::Index k2 = 0; k2 < K; ++k2)
        for (Eigen::Index q2 = 0; q2 < Q; ++q2)
            for (Eigen::Index k1 = 0; k1 < K; ++k1)
                for (Eigen::Index q1 = 0; q1 < Q; ++q1)
                    s(k1 * Q + q1, k2 * Q + q2) = gp(k1, k2) * gf(q1, q2) / sigma2;
    for (Eigen::Index j = 0; j < n; ++j)
        s(j, j) += 1.0 / effective_weights(j);
    impl->blocks.emplace_back(s);
    check_pivots(impl->blocks.back());
    return GramSystem(GramStructure::dense, sigma2, n, std::move(impl));
}

CVec GramSystem::solve(const CVec &rhs) const
{
    if (rhs.size() != size_)
        throw std::invalid_argument("solve: right-hand side length " + std::to_string(rhs.size()) +
                                    " does not match system size " + std::to_string(size_));
    const Eigen::Index Q = impl_->Q, K = impl_->K;
    switch (structure_)
    {
    case GramStructure::diagonal:
        return rhs.cwiseQuotient(impl_->diag.cast<cxd>());
    case GramStructure::block_diagonal:
    {
        CVec out(size_);
        for (Eigen::Index k = 0; k < K; ++k)
            out.segment(k * Q, Q) = impl_->blocks[static_cast<std::size_t>(k)].solve(
                rhs.segment(k * Q, Q));
        return out;
    }
    case GramStructure::diagonal_blocks:
    {
        CVec out(size_);
        CVec sub(K);
        for (Eigen::Index q = 0; q < Q; ++q)
        {
            for (Eigen::Index k = 0; k < K; ++k)
                sub(k) = rhs(k * Q + q);
            CVec sol = impl_->blocks[static_cast<std::size_t>(q)].solve(sub);
            for (Eigen::Index k = 0; k < K; ++k)
                out(k * Q + q) = sol(k);
        }
        return out;
    }
    case GramStructure::dense:
        return impl_->blocks.front().solve(rhs);
    }
    throw std::logic_error("unreachable Gram structure");
}

RVec GramSystem::diag_of_inverse() const
{
    const Eigen::Index Q = impl_->Q, K = impl_->K;
    switch (structure_)
    {
    case GramStructure::diagonal:
        return impl_->diag.cwiseInverse();
    case GramStructure::block_diagonal:
    {
        RVec out(size_);
        for (Eigen::Index k = 0; k < K; ++k)
        {
            const CMat inv = impl_->blocks[static_cast<std::size_t>(k)].solve(CMat::Identity(Q, Q));
            out.segment(k * Q, Q) = inv.diagonal().real();
        }
        return out;
    }
    case GramStructure::diagonal_blocks:
    {
        RVec out(size_);
        for (Eigen::Index q = 0; q < Q; ++q)
        {
            const CMat inv = impl_->blocks[static_cast<std::size_t>(q)].solve(CMat::Identity(K, K));
            for (Eigen::Index k = 0; k < K; ++k)
                out(k * Q + q) = std::real(inv(k, k));
        }
        return out;
    }
    case GramStructure::dense:
    {
        const Eigen::Index n = size_;
        const CMat inv = impl_->blocks.front().solve(CMat::Identity(n, n));
        return inv.diagonal().real();
    }
    }
    throw std::logic_error("unreachable Gram structure");
}

double GramSystem::logdet() const
{
    switch (structure_)
    {
    case GramStructure::diagonal:
        return impl_->diag.array().log().sum();
    case GramStructure::block_diagonal:
    case GramStructure::diagonal_blocks:
    case GramStructure::dense:
    {
        double total = 0.0;
        for (const auto &block : impl_->blocks)
            total += ldlt_logdet(block);
        return total;
    }
    }
    throw std::logic_error("unreachable Gram structure");
}

CMat GramSystem::dense() const
{
    const Eigen::Index Q = impl_->Q, K = impl_->K;
    CMat out = CMat::Zero(size_, size_);
    switch (structure_)
    {
    case GramStructure::diagonal:
        out.diagonal() = impl_->diag.cast<cxd>();
        return out;
    case GramStructure::block_diagonal:
        for (Eigen::Index k = 0; k < K; ++k)
            out.block(k * Q, k * Q, Q, Q) =
                impl_->blocks[static_cast<std::size_t>(k)].reconstructedMatrix();
        return out;
    case GramStructure::diagonal_blocks:
        for (Eigen::Index q = 0; q < Q; ++q)
        {
            const CMat block = impl_->blocks[static_cast<std::size_t>(q)].reconstructedMatrix();
            for (Eigen::Index k1 = 0; k1 < K; ++k1)
                for (Eigen::Index k2 = 0; k2 < K; ++k2)
                    out(k1 * Q + q, k2 * Q + q) = block(k1, k2);
        }
        return out;
    case GramStructure::dense:
        return impl_->blocks.front().reconstructedMatrix();
    }
    throw std::logic_error("unreachable Gram structure");
}

std::pair<double, double> gauss_logdet_quadform(const KronDictionary &dict,
                                                const RVec &effective_weights, double sigma2,
                                                const CVec &z)
{
    const GramSystem gram = GramSystem::build(dict, effective_weights, sigma2);
    const CVec b = dict.apply_adjoint(z);
    const CVec y = gram.solve(b);

    // See the identities documented on the declaration: the determinant
    // lemma reduces log det V to log det S plus diagonal terms, and the
    // Woodbury identity reduces zᴴV⁻¹z to a single structured solve.
    const double logdet = static_cast<double>(dict.rows()) * std::log(sigma2) +
                          effective_weights.array().log().sum() + gram.logdet();
    const double quadform = (z.squaredNorm() - std::real(b.dot(y)) / sigma2) / sigma2;
    return {logdet, quadform};
}

} // namespace kronsbl
