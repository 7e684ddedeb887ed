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

#include "idec/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "idec/errors.hpp"

namespace idec {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::TraceNotOne: return "TraceNotOne";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::QuadratureFailure: return "QuadratureFailure";
        case ErrorKind::KernelNotPSD: return "KernelNotPSD";
        case ErrorKind::KernelAsymmetric: return "KernelAsymmetric";
        case ErrorKind::StepTooLarge: return "StepTooLarge";
        case ErrorKind::WeightsNotNormalized: return "WeightsNotNormalized";
        case ErrorKind::GridMismatch: return "GridMismatch";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::Unsupported: return "Unsupported";
    }
    return "Unknown";
}

namespace {

void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream os;
        os << what << " must be a non-empty square matrix, got " << m.rows() << "x" << m.cols();
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
}

} // namespace

double hermiticity_defect(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "hermiticity check needs a square matrix");
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_hermitian_eigenvalue(const Matrix& m) {
    const Matrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double max_abs_entry(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(Matrix m, double tol) : m_(std::move(m)) {
    require_square(m_, "Hamiltonian");
    const double defect = hermiticity_defect(m_);
    if (defect > tol) {
        std::ostringstream os;
        os << "operator asymmetry " << defect << " exceeds " << tol;
        throw Error(ErrorKind::NotHermitian, os.str(), defect);
    }
}

Matrix SpectralDecomposition::reconstruct() const {
    Matrix out = Matrix::Zero(dim(), dim());
    for (std::size_t j = 0; j < levels.size(); ++j) out += levels[j] * projectors[j];
    return out;
}

SpectralDecomposition eigendecompose(const HermitianOperator& h, double degeneracy_tol) {
    if (!(degeneracy_tol > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "degeneracy tolerance must be positive");
    }
    const Eigen::Index d = h.dim();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::InvalidArgument, "eigensolver did not converge");
    }

    SpectralDecomposition s;
    s.eigenvectors = solver.eigenvectors();
    const RealVector& values = solver.eigenvalues();

    // Largest-magnitude component of each eigenvector made real positive.
    for (Eigen::Index k = 0; k < d; ++k) {
        auto col = s.eigenvectors.col(k);
        Eigen::Index pivot = 0;
        col.cwiseAbs().maxCoeff(&pivot);
        const Complex phase = std::conj(col(pivot)) / std::abs(col(pivot));
        col *= phase;
        col(pivot) = Complex(col(pivot).real(), 0.0);
    }

    s.eigenvalues.resize(static_cast<std::size_t>(d));
    s.level_of.resize(static_cast<std::size_t>(d));
    Eigen::Index start = 0;
    while (start < d) {
        Eigen::Index end = start + 1;
        while (end < d && values(end) - values(start) <= degeneracy_tol) ++end;

        const double level = values.segment(start, end - start).mean();
        Matrix projector = Matrix::Zero(d, d);
        std::vector<Eigen::Index> members;
        for (Eigen::Index k = start; k < end; ++k) {
            projector += s.eigenvectors.col(k) * s.eigenvectors.col(k).adjoint();
            s.eigenvalues[static_cast<std::size_t>(k)] = level;
            s.level_of[static_cast<std::size_t>(k)] = s.levels.size();
            members.push_back(k);
        }
        s.levels.push_back(level);
        s.projectors.push_back(std::move(projector));
        s.members.push_back(std::move(members));
        start = end;
    }
    return s;
}

DensityMatrix validate_density(const Matrix& m, double hermitian_tol, double trace_tol,
                               double positivity_tol) {
    require_square(m, "density matrix");

    const double asym = hermiticity_defect(m);
    if (asym > hermitian_tol) {
        std::ostringstream os;
        os << "state asymmetry " << asym << " exceeds " << hermitian_tol;
        throw Error(ErrorKind::NotHermitian, os.str(), asym);
    }
    const double trace_defect = m.trace().real() - 1.0;
    if (std::abs(trace_defect) > trace_tol || std::abs(m.trace().imag()) > trace_tol) {
        std::ostringstream os;
        os << "trace differs from 1 by " << trace_defect;
        throw Error(ErrorKind::TraceNotOne, os.str(), trace_defect);
    }
    const double min_eig = min_hermitian_eigenvalue(m);
    if (min_eig < -positivity_tol) {
        std::ostringstream os;
        os << "minimum eigenvalue " << min_eig;
        throw Error(ErrorKind::NotPositive, os.str(), min_eig);
    }
    return DensityMatrix(m);
}

Matrix to_energy_basis(const Matrix& rho, const SpectralDecomposition& s) {
    if (rho.rows() != s.dim() || rho.cols() != s.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "state and spectrum dimensions differ");
    }
    return s.eigenvectors.adjoint() * rho * s.eigenvectors;
}

Matrix from_energy_basis(const Matrix& rho_energy, const SpectralDecomposition& s) {
    if (rho_energy.rows() != s.dim() || rho_energy.cols() != s.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "state and spectrum dimensions differ");
    }
    return s.eigenvectors * rho_energy * s.eigenvectors.adjoint();
}

} // namespace idec
