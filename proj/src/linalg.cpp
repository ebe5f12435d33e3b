// Copyright 2026 The kdcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kdcalc/linalg.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace kdcalc {

namespace {

bool all_finite(const CVector &v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) {
            return false;
        }
    }
    return true;
}

bool all_finite(const CMatrix &m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
                return false;
            }
        }
    }
    return true;
}

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(6);
    out << x;
    return out.str();
}

}  // namespace

StateVector StateVector::from_amplitudes(CVector amplitudes, const Tolerances &tol) {
    if (amplitudes.size() == 0) {
        throw Error(ErrorKind::InvalidArgument, "state vector must have dimension >= 1");
    }
    if (!all_finite(amplitudes)) {
        throw Error(ErrorKind::NotNormalized, "amplitudes contain NaN or Inf");
    }
    double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > tol.normalization) {
        throw Error(ErrorKind::NotNormalized,
                    "norm " + fmt(norm) + " deviates from 1 by " + fmt(std::abs(norm - 1.0)));
    }
    return StateVector(std::move(amplitudes));
}

StateVector StateVector::normalized(CVector amplitudes) {
    if (amplitudes.size() == 0 || !all_finite(amplitudes)) {
        throw Error(ErrorKind::InvalidArgument, "cannot normalize an empty or non-finite vector");
    }
    double norm = amplitudes.norm();
    if (norm == 0.0) {
        throw Error(ErrorKind::InvalidArgument, "cannot normalize the zero vector");
    }
    amplitudes /= norm;
    return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis_state(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw Error(ErrorKind::InvalidArgument, "basis index out of range");
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v));
}

Complex inner_product(const StateVector &x, const StateVector &y) {
    if (x.dim() != y.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "inner product of dimensions " + std::to_string(x.dim()) + " and " + std::to_string(y.dim()));
    }
    return x.amplitudes().dot(y.amplitudes());
}

DensityOperator DensityOperator::from_matrix(CMatrix matrix, const Tolerances &tol) {
    if (matrix.rows() == 0 || matrix.rows() != matrix.cols()) {
        throw Error(ErrorKind::InvalidState, "density matrix must be square with dimension >= 1");
    }
    if (!all_finite(matrix)) {
        throw Error(ErrorKind::InvalidState, "density matrix contains NaN or Inf");
    }
    double herm = hermiticity_deviation(matrix);
    if (herm > tol.hermiticity) {
        throw Error(ErrorKind::InvalidState, "hermiticity deviation " + fmt(herm));
    }
    Complex tr = matrix.trace();
    if (std::abs(tr - 1.0) > tol.trace) {
        throw Error(ErrorKind::InvalidState, "trace " + fmt(tr.real()) + (tr.imag() >= 0 ? "+" : "") +
                                                 fmt(tr.imag()) + "i is not 1");
    }
    double lowest = hermitian_eigenvalues(matrix).front();
    if (lowest < tol.min_eigenvalue) {
        throw Error(ErrorKind::InvalidState, "negative eigenvalue " + fmt(lowest));
    }
    return DensityOperator(std::move(matrix));
}

Complex DensityOperator::sandwich(const StateVector &x, const StateVector &y) const {
    if (x.dim() != dim() || y.dim() != dim()) {
        throw Error(ErrorKind::DimensionMismatch, "state dimension does not match density operator");
    }
    return x.amplitudes().dot(matrix_ * y.amplitudes());
}

double DensityOperator::probability(const StateVector &x) const {
    return sandwich(x, x).real();
}

DensityOperator density_from_pure(const StateVector &psi) {
    const CVector &v = psi.amplitudes();
    CMatrix m = v * v.adjoint();
    return DensityOperator::from_matrix(std::move(m));
}

CMatrix OrthonormalBasis::as_columns() const {
    auto d = static_cast<Eigen::Index>(dim());
    CMatrix u(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        u.col(k) = vectors_[static_cast<std::size_t>(k)].amplitudes();
    }
    return u;
}

OrthonormalBasis validate_basis(std::vector<StateVector> vectors, std::vector<std::string> labels, std::string id,
                                const Tolerances &tol) {
    const std::size_t n = vectors.size();
    if (n == 0) {
        throw Error(ErrorKind::DimensionMismatch, "basis must contain at least one vector");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (vectors[i].dim() != n) {
            throw Error(ErrorKind::DimensionMismatch, "basis has " + std::to_string(n) + " vectors but vector " +
                                                          std::to_string(i) + " has dimension " +
                                                          std::to_string(vectors[i].dim()));
        }
    }
    if (labels.size() != n) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::to_string(labels.size()) + " labels for " + std::to_string(n) + " vectors");
    }
    std::set<std::string> seen;
    for (const auto &label : labels) {
        if (!seen.insert(label).second) {
            throw Error(ErrorKind::DuplicateLabel, "label '" + label + "' appears more than once");
        }
    }

    double worst = -1.0;
    std::size_t worst_j = 0;
    std::size_t worst_k = 0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
            Complex g = inner_product(vectors[j], vectors[k]);
            double dev = std::abs(g - (j == k ? Complex(1.0) : Complex(0.0)));
            if (dev > worst) {
                worst = dev;
                worst_j = j;
                worst_k = k;
            }
        }
    }
    if (worst > tol.orthonormality) {
        throw Error(ErrorKind::NotOrthonormal, "worst Gram deviation " + fmt(worst) + " at pair (" +
                                                   std::to_string(worst_j) + ", " + std::to_string(worst_k) + ")");
    }
    return OrthonormalBasis(std::move(vectors), std::move(labels), std::move(id));
}

OrthonormalBasis basis_from_columns(const CMatrix &unitary, std::string id, const Tolerances &tol) {
    std::vector<StateVector> vectors;
    std::vector<std::string> labels;
    for (Eigen::Index k = 0; k < unitary.cols(); ++k) {
        vectors.push_back(StateVector::from_amplitudes(unitary.col(k), tol));
        labels.push_back(std::to_string(k));
    }
    return validate_basis(std::move(vectors), std::move(labels), std::move(id), tol);
}

OrthonormalBasis computational_basis(std::size_t dim, std::string id) {
    auto d = static_cast<Eigen::Index>(dim);
    return basis_from_columns(CMatrix::Identity(d, d), std::move(id));
}

double hermiticity_deviation(const CMatrix &m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "hermiticity of a non-square matrix");
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

std::vector<double> hermitian_eigenvalues(const CMatrix &m) {
    Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double frobenius_distance(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "frobenius distance of differently shaped matrices");
    }
    return (a - b).norm();
}

}  // namespace kdcalc
