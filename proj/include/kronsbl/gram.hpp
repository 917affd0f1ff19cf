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

#ifndef KRONSBL_GRAM_HPP
#define KRONSBL_GRAM_HPP

#include "kronsbl/dictionary.hpp"
#include "kronsbl/types.hpp"

#include <memory>
#include <utility>

namespace kronsbl
{

// Sparsity layout of the regularized Gram matrix
//
//     S = (1/σ²)·AᴴA + Diag(w̃)⁻¹,   AᴴA = conj(PPᴴ) ⊗ FᴴF,
//
// classified from the two Gram factors:
//   diagonal        — both conj(PPᴴ) and FᴴF are diagonal; S is diagonal.
//   block_diagonal  — only conj(PPᴴ) is diagonal; S falls apart into K
//                     contiguous Q×Q blocks.
//   diagonal_blocks — only FᴴF is diagonal; after regrouping indices by
//                     transform bin, S falls apart into Q independent K×K
//                     blocks with stride Q.
//   dense           — neither factor is diagonal.
enum class GramStructure
{
    diagonal,
    block_diagonal,
    diagonal_blocks,
    dense
};

const char *to_string(GramStructure s);

// Factorized view of S for one fixed set of effective weights. Immutable
// after construction; solve/diagonal/logdet reuse the factorization.
class GramSystem
{
  public:
    // effective_weights = w̃ (length QK, strictly positive), sigma2 > 0.
    // Throws std::invalid_argument on invalid inputs and std::runtime_error
    // (naming the smallest pivot) if the factorization degenerates.
    static GramSystem build(const KronDictionary &dict, const RVec &effective_weights,
                            double sigma2);

    GramStructure structure() const { return structure_; }
    double sigma2() const { return sigma2_; }
    Eigen::Index size() const { return size_; } // QK

    // S⁻¹·rhs.
    CVec solve(const CVec &rhs) const;

    // Real diagonal of S⁻¹.
    RVec diag_of_inverse() const;

    // log det S.
    double logdet() const;

    // Dense expansion of the structured payload (small-instance oracle tool).
    CMat dense() const;

    ~GramSystem();
    GramSystem(GramSystem &&) noexcept;
    GramSystem &operator=(GramSystem &&) noexcept;
    GramSystem(const GramSystem &) = delete;
    GramSystem &operator=(const GramSystem &) = delete;

  private:
    struct Impl;
    GramSystem(GramStructure s, double sigma2, Eigen::Index size, std::unique_ptr<Impl> impl);

    GramStructure structure_;
    double sigma2_;
    Eigen::Index size_;
    std::unique_ptr<Impl> impl_;
};

inline GramSystem build_gram(const KronDictionary &dict, const RVec &effective_weights,
                             double sigma2)
{
    return GramSystem::build(dict, effective_weights, sigma2);
}

inline CVec solve_gram(const GramSystem &gram, const CVec &rhs)
{
    return gram.solve(rhs);
}

inline RVec diag_of_gram_inverse(const GramSystem &gram)
{
    return gram.diag_of_inverse();
}

// log det V and zᴴV⁻¹z for the marginal covariance V = A·Diag(w̃)·Aᴴ + σ²·I
// (MN×MN), computed without forming V. With S = (1/σ²)·AᴴA + Diag(w̃)⁻¹ and
// b = Aᴴz, the exact identities used are
//
//     log det V = MN·log σ² + Σ_j log w̃_j + log det S
//                 (determinant lemma: det(σ²I + AW̃Aᴴ) = σ²^MN · det W̃ · det S)
//
//     zᴴV⁻¹z    = ( ‖z‖² − (1/σ²)·bᴴS⁻¹b ) / σ²
//                 (Woodbury: V⁻¹ = (1/σ²)(I − (1/σ²)·A·S⁻¹·Aᴴ)).
std::pair<double, double> gauss_logdet_quadform(const KronDictionary &dict,
                                                const RVec &effective_weights, double sigma2,
                                                const CVec &z);

} // namespace kronsbl

#endif
