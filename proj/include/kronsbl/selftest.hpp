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

#ifndef KRONSBL_SELFTEST_HPP
#define KRONSBL_SELFTEST_HPP

#include <ostream>

namespace kronsbl
{

// Built-in invariant suite, shipped in the CLI so installed binaries can
// be checked without the development test tree. Covers the Kronecker
// reshape identities, every structured Gram path against a dense oracle,
// posterior statistics, objective monotonicity of all three iterative
// estimators on random instances, and sweep/CSV determinism. Prints one
// line per check to `out` and returns true iff everything passed.
bool selftest(std::ostream &out);

} // namespace kronsbl

#endif
