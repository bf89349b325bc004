// Copyright 2026 The Mousetrap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Every numerical tolerance used by the library lives here.

namespace mousetrap::tol {

inline constexpr double kHermitian = 1e-12;          // max |M_ij - conj(M_ji)| accepted as Hermitian
inline constexpr double kEigReconstruction = 1e-10;  // ||M V - V diag(l)||_max
inline constexpr double kOrthonormal = 1e-12;        // ||V^+ V - I||_max
inline constexpr double kUnitary = 1e-12;            // single expm_unitary result
inline constexpr double kPropagatedUnitary = 1e-9;   // after a full ordered product
inline constexpr double kNormalized = 1e-10;         // | ||psi|| - 1 |
inline constexpr double kQuadrature = 1e-9;          // absolute, adaptive Simpson
inline constexpr double kRefinement = 1e-6;          // survival change between grid doublings
inline constexpr double kFringe = 1e-12;             // P(1-P) below this: Fisher information undefined
inline constexpr double kProbabilitySlack = 1e-9;    // P may exceed 1 by this much from roundoff
inline constexpr double kPsi0Residual = 1e-10;       // ||H(0) Psi0 - Psi0 Lambda(0)||_max

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr int kQuadratureMaxLevel = 24;       // at most 2^24 Simpson panels
inline constexpr long kRefinementMaxSteps = 1L << 24;

}  // namespace mousetrap::tol
