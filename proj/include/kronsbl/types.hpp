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

#ifndef KRONSBL_TYPES_HPP
#define KRONSBL_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace kronsbl
{

using cxd = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// Lower bound applied to every weight/scale entry. Keeps the regularized
// Gram matrix strictly positive definite and every update formula finite;
// entries are clamped here instead of being pruned.
inline constexpr double weight_floor = 1e-12;

inline constexpr const char *version_string = "0.1.0";

} // namespace kronsbl

#endif
