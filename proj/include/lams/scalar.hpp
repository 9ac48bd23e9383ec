// Copyright 2026 The lams Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cmath>
#include <complex>

namespace lams {

using Scalar = std::complex<double>;

// Equality of scalars in terms and denotations.
inline constexpr double kScalarTol = 1e-9;
// Rule guards and coefficient pruning: anything at or below this is zero.
inline constexpr double kRuleTol = 1e-12;

inline bool scalarEq(Scalar a, Scalar b, double tol = kScalarTol) {
    return std::abs(a.real() - b.real()) <= tol && std::abs(a.imag() - b.imag()) <= tol;
}

inline bool isZeroScalar(Scalar a, double tol = kRuleTol) {
    return std::abs(a.real()) <= tol && std::abs(a.imag()) <= tol;
}

inline bool isFiniteScalar(Scalar a) {
    return std::isfinite(a.real()) && std::isfinite(a.imag());
}

// Exact lexicographic order (re, im); used only for canonical sorting.
inline int compareScalarExact(Scalar a, Scalar b) {
    if (a.real() != b.real()) return a.real() < b.real() ? -1 : 1;
    if (a.imag() != b.imag()) return a.imag() < b.imag() ? -1 : 1;
    return 0;
}

}  // namespace lams
