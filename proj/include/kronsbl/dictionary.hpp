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

#ifndef KRONSBL_DICTIONARY_HPP
#define KRONSBL_DICTIONARY_HPP

#include "kronsbl/types.hpp"

namespace kronsbl
{

// Implicit measurement operator A = Pᵀ ⊗ F, stored as its two factors:
// the pilot matrix P (K×N) and the transform matrix F (M×Q). A maps a
// length-QK coefficient vector to a length-MN observation vector and is
// never materialized; products go through the reshape identities
//
//     A · vec(U)  = vec(F · U · P),      U of shape Q×K,
//     Aᴴ · vec(Z) = vec(Fᴴ · Z · Pᴴ),    Z of shape M×N,
//
// with column-major vectorization throughout: vec(U)[k·Q + q] = U(q, k)
// and vec(Z)[n·M + m] = Z(m, n).
class KronDictionary
{
  public:
    // pilot: K×N, transform: M×Q. Throws std::invalid_argument on empty or
    // non-finite factors.
    KronDictionary(CMat pilot, CMat transform);

    Eigen::Index num_users() const { return pilot_.rows(); }       // K
    Eigen::Index pilot_length() const { return pilot_.cols(); }    // N
    Eigen::Index num_antennas() const { return transform_.rows(); } // M
    Eigen::Index transform_size() const { return transform_.cols(); } // Q
    Eigen::Index rows() const { return num_antennas() * pilot_length(); }   // MN
    Eigen::Index cols() const { return transform_size() * num_users(); }    // QK

    const CMat &pilot() const { return pilot_; }
    const CMat &transform() const { return transform_; }

    // A·x for x of length QK; result has length MN.
    CVec apply(const CVec &x) const;

    // Aᴴ·y for y of length MN; result has length QK.
    CVec apply_adjoint(const CVec &y) const;

    // Gram factors of AᴴA. With column-major vectorization the Gram of
    // A = Pᵀ ⊗ F factorizes as
    //
    //     AᴴA = conj(P·Pᴴ) ⊗ (Fᴴ·F),
    //
    // i.e. the pilot factor enters CONJUGATED (equivalently transposed,
    // since P·Pᴴ is Hermitian). The conjugate is invisible when P·Pᴴ is
    // real — e.g. orthogonal DFT pilot rows give P·Pᴴ = N·I — but it is
    // essential for general complex pilots.
    const CMat &gram_pilot() const { return gram_pilot_; }        // conj(P·Pᴴ), K×K
    const CMat &gram_transform() const { return gram_transform_; } // Fᴴ·F, Q×Q

    // Dense MN×QK expansion of A. Test/oracle tool for small instances;
    // quadratic in memory, never used on the estimation path.
    CMat dense() const;

  private:
    CMat pilot_;
    CMat transform_;
    CMat gram_pilot_;
    CMat gram_transform_;
};

inline CVec apply_dictionary(const KronDictionary &dict, const CVec &x)
{
    return dict.apply(x);
}

inline CVec apply_dictionary_adjoint(const KronDictionary &dict, const CVec &y)
{
    return dict.apply_adjoint(y);
}

} // namespace kronsbl

#endif
