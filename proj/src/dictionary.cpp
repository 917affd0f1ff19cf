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

#include <stdexcept>
#include <string>
#include <utility>

namespace kronsbl
{

KronDictionary::KronDictionary(CMat pilot, CMat transform)
    : pilot_(std::move(pilot)), transform_(std::move(transform))
{
    if (pilot_.rows() < 1 || pilot_.cols() < 1)
        throw std::invalid_argument("pilot matrix must be non-empty");
    if (transform_.rows() < 1 || transform_.cols() < 1)
        throw std::invalid_argument("transform matrix must be non-empty");
    if (!pilot_.allFinite())
        throw std::invalid_argument("pilot matrix contains non-finite entries");
    if (!transform_.allFinite())
        throw std::invalid_argument("transform matrix contains non-finite entries");

    gram_pilot_ = (pilot_ * pilot_.adjoint()).conjugate();
    gram_transform_ = transform_.adjoint() * transform_;
}

CVec KronDictionary::apply(const CVec &x) const
{
    if (x.size() != cols())
        throw std::invalid_argument("apply: vector length " + std::to_string(x.size()) +
                                    " does not match operator columns " + std::to_string(cols()));
    Eigen::Map<const CMat> coeff(x.data(), transform_size(), num_users()); // Q×K
    CVec out(rows());
    Eigen::Map<CMat> obs(out.data(), num_antennas(), pilot_length()); // M×N
    obs.noalias() = transform_ * (coeff * pilot_);
    return out;
}

CVec KronDictionary::apply_adjoint(const CVec &y) const
{
    if (y.size() != rows())
        throw std::invalid_argument("apply_adjoint: vector length " + std::to_string(y.size()) +
                                    " does not match operator rows " + std::to_string(rows()));
    Eigen::Map<const CMat> obs(y.data(), num_antennas(), pilot_length()); // M×N
    CVec out(cols());
    Eigen::Map<CMat> coeff(out.data(), transform_size(), num_users()); // Q×K
    coeff.noalias() = transform_.adjoint() * (obs * pilot_.adjoint());
    return out;
}

CMat KronDictionary::dense() const
{
    // A[(n·M + m), (k·Q + q)] = F(m, q) · P(k, n), directly from the
    // reshape identity A·vec(U) = vec(F·U·P).
    const Eigen::Index M = num_antennas(), N = pilot_length();
    const Eigen::Index Q = transform_size(), K = num_users();
    CMat a(M * N, Q * K);
    for (Eigen::Index k = 0; k < K; ++k)
        for (Eigen::Index q = 0; q < Q; ++q)
            for (Eigen::Index n = 0; n < N; ++n)
                for (Eigen::Index m = 0; m < M; ++m)
                    a(n * M + m, k * Q + q) = transform_(m, q) * pilot_(k, n);
    return a;
}

} // namespace kronsbl
