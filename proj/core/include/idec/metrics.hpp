// Copyright 2026 The idec Authors
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

#include "idec/operators.hpp"

namespace idec {

// Tr(rho^2).
double purity(const Matrix& rho);

// sum_{k != l} |rho_kl| in the energy basis of s.
double coherence_l1(const Matrix& rho, const SpectralDecomposition& s);

// Re Tr(rho H). Throws DimensionMismatch.
double energy_expectation(const Matrix& rho, const Matrix& h);

// (1/2) sum |eig(rho - sigma)|. Throws DimensionMismatch.
double trace_distance(const Matrix& rho, const Matrix& sigma);

inline double purity(const DensityMatrix& rho) { return purity(rho.matrix()); }

} // namespace idec
