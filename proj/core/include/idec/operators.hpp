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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace idec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kDegeneracyTol = 1e-9;

// Largest |M - M^dagger| entry.
double hermiticity_defect(const Matrix& m);

// Minimum eigenvalue of the Hermitian part of m.
double min_hermitian_eigenvalue(const Matrix& m);

double max_abs_entry(const Matrix& m);

class HermitianOperator {
public:
    // Throws NotHermitian if any |m(k,l) - conj(m(l,k))| exceeds tol.
    explicit HermitianOperator(Matrix m, double tol = kHermitianTol);

    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }

private:
    Matrix m_;
};

// Eigenvalues of a Hermitian operator grouped into distinct levels.
//
// `eigenvalues` and the columns of `eigenvectors` are indexed by the energy
// basis (one entry per dimension, ascending). Eigenvalues closer than the
// degeneracy tolerance are merged into one level; every member of a level
// reports the level's value, and `level_of[k]` names the level of basis
// vector k. `projectors[j]` projects onto level j.
struct SpectralDecomposition {
    std::vector<double> levels;
    std::vector<Matrix> projectors;
    std::vector<std::vector<Eigen::Index>> members;
    std::vector<double> eigenvalues;
    std::vector<std::size_t> level_of;
    Matrix eigenvectors;

    Eigen::Index dim() const { return eigenvectors.rows(); }
    std::size_t level_count() const { return levels.size(); }

    // Sum_j levels[j] * projectors[j].
    Matrix reconstruct() const;
};

SpectralDecomposition eigendecompose(const HermitianOperator& h,
                                     double degeneracy_tol = kDegeneracyTol);

// A validated quantum state: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
public:
    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }

    // Wraps without checks. Only for states produced by operations that
    // preserve the invariants by construction.
    static DensityMatrix trusted(Matrix m) { return DensityMatrix(std::move(m)); }

private:
    explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
    friend DensityMatrix validate_density(const Matrix&, double, double, double);

    Matrix m_;
};

struct DensityTolerance {
    double hermitian = 1e-12;
    double trace = 1e-10;
    double positivity = 1e-10;
};

// Checks hermiticity, then trace, then positivity and throws the first
// violation (NotHermitian / TraceNotOne / NotPositive) with its measured
// value: the largest asymmetry, the signed trace defect, or the minimum
// eigenvalue respectively.
DensityMatrix validate_density(const Matrix& m, double hermitian_tol = 1e-12,
                               double trace_tol = 1e-10,
                               double positivity_tol = 1e-10);

inline DensityMatrix validate_density(const Matrix& m, const DensityTolerance& tol) {
    return validate_density(m, tol.hermitian, tol.trace, tol.positivity);
}

// rho' = V^dagger rho V, V the eigenvector matrix.
Matrix to_energy_basis(const Matrix& rho, const SpectralDecomposition& s);
Matrix from_energy_basis(const Matrix& rho_energy, const SpectralDecomposition& s);

inline Matrix to_energy_basis(const DensityMatrix& rho, const SpectralDecomposition& s) {
    return to_energy_basis(rho.matrix(), s);
}

} // namespace idec
