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

#include "idec/metrics.hpp"

#include <cmath>

#include "idec/errors.hpp"

namespace idec {

double purity(const Matrix& rho) {
    // Tr(rho^2) = sum_kl rho_kl rho_lk = sum |rho_kl|^2 for Hermitian rho.
    return (rho.cwiseProduct(rho.transpose())).sum().real();
}

double coherence_l1(const Matrix& rho, const SpectralDecomposition& s) {
    const Matrix energy = to_energy_basis(rho, s);
    double total = 0.0;
    for (Eigen::Index k = 0; k < energy.rows(); ++k) {
        for (Eigen::Index l = 0; l < energy.cols(); ++l) {
            if (k != l) total += std::abs(energy(k, l));
        }
    }
    return total;
}

double energy_expectation(const Matrix& rho, const Matrix& h) {
    if (rho.rows() != h.rows() || rho.cols() != h.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "state and Hamiltonian dimensions differ");
    }
    return (rho * h).trace().real();
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "trace distance needs equal dimensions");
    }
    const Matrix diff = rho - sigma;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

} // namespace idec
