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

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kdcalc/error.hpp"
#include "kdcalc/tolerances.hpp"

namespace kdcalc {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
/// Dense complex matrix; entry (j, k) is row j, column k.
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Unit-norm pure state. Only constructible through the checked factories.
class StateVector {
   public:
    /// Takes amplitudes as given; throws NotNormalized if |norm - 1| exceeds tolerance.
    static StateVector from_amplitudes(CVector amplitudes, const Tolerances &tol = default_tolerances());
    /// Rescales to unit norm; throws InvalidArgument on a zero or non-finite vector.
    static StateVector normalized(CVector amplitudes);
    /// Computational basis vector |index> in dimension dim.
    static StateVector basis_state(std::size_t dim, std::size_t index);

    std::size_t dim() const {
        return static_cast<std::size_t>(amplitudes_.size());
    }
    const CVector &amplitudes() const {
        return amplitudes_;
    }
    Complex operator[](std::size_t i) const {
        return amplitudes_(static_cast<Eigen::Index>(i));
    }

   private:
    explicit StateVector(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    }
    CVector amplitudes_;
};

/// <x|y>, conjugate-linear in x.
Complex inner_product(const StateVector &x, const StateVector &y);

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityOperator {
   public:
    /// Throws InvalidState naming the violated invariant.
    static DensityOperator from_matrix(CMatrix matrix, const Tolerances &tol = default_tolerances());

    std::size_t dim() const {
        return static_cast<std::size_t>(matrix_.rows());
    }
    const CMatrix &matrix() const {
        return matrix_;
    }
    Complex operator()(std::size_t j, std::size_t k) const {
        return matrix_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    }
    /// <x|rho|y>
    Complex sandwich(const StateVector &x, const StateVector &y) const;
    /// Born probability <x|rho|x> (real part; the imaginary part is rounding).
    double probability(const StateVector &x) const;

   private:
    explicit DensityOperator(CMatrix matrix) : matrix_(std::move(matrix)) {
    }
    CMatrix matrix_;
};

/// |psi><psi|
DensityOperator density_from_pure(const StateVector &psi);

/// d orthonormal vectors in dimension d with distinct labels and an identity tag.
class OrthonormalBasis {
   public:
    std::size_t dim() const {
        return vectors_.size();
    }
    const StateVector &vector(std::size_t i) const {
        return vectors_.at(i);
    }
    const std::vector<StateVector> &vectors() const {
        return vectors_;
    }
    const std::string &label(std::size_t i) const {
        return labels_.at(i);
    }
    const std::vector<std::string> &labels() const {
        return labels_;
    }
    const std::string &id() const {
        return id_;
    }
    /// Unitary whose column i is vector i.
    CMatrix as_columns() const;

   private:
    friend OrthonormalBasis validate_basis(std::vector<StateVector>, std::vector<std::string>, std::string,
                                           const Tolerances &);
    OrthonormalBasis(std::vector<StateVector> vectors, std::vector<std::string> labels, std::string id)
        : vectors_(std::move(vectors)), labels_(std::move(labels)), id_(std::move(id)) {
    }
    std::vector<StateVector> vectors_;
    std::vector<std::string> labels_;
    std::string id_;
};

/// Checks the Gram matrix against the identity. Errors: DimensionMismatch,
/// DuplicateLabel, NotOrthonormal (message names the worst pair and its deviation).
OrthonormalBasis validate_basis(std::vector<StateVector> vectors, std::vector<std::string> labels,
                                std::string id = "", const Tolerances &tol = default_tolerances());

/// Basis built from the columns of a unitary, labelled "0".."d-1".
OrthonormalBasis basis_from_columns(const CMatrix &unitary, std::string id,
                                    const Tolerances &tol = default_tolerances());

/// {|0>, ..., |d-1>}
OrthonormalBasis computational_basis(std::size_t dim, std::string id = "computational");

/// max_{j,k} |M(j,k) - conj(M(k,j))|
double hermiticity_deviation(const CMatrix &m);

/// Ascending eigenvalues of the Hermitian part of m.
std::vector<double> hermitian_eigenvalues(const CMatrix &m);

/// Frobenius norm of a - b.
double frobenius_distance(const CMatrix &a, const CMatrix &b);

}  // namespace kdcalc
