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

#include "kdcalc/random.hpp"

#include <cmath>
#include <numbers>

namespace kdcalc {

double Rng::uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

Complex Rng::complex_gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t j, std::uint64_t k) {
    return seed ^ splitmix64((j << 32) | (k & 0xFFFFFFFFULL));
}

CMatrix ginibre(std::size_t rows, std::size_t cols, Rng &rng) {
    CMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            g(i, j) = rng.complex_gaussian();
        }
    }
    return g;
}

namespace {

CMatrix haar_unitary(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) {
        throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
    }
    Rng rng(seed);
    Eigen::MatrixXcd g = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        Complex rkk = r(k, k);
        double mag = std::abs(rkk);
        Complex phase = mag > 0.0 ? rkk / mag : Complex(1.0);
        q.col(k) *= phase;
    }
    return q;
}

}  // namespace

OrthonormalBasis haar_random_basis(std::size_t dim, std::uint64_t seed) {
    return basis_from_columns(haar_unitary(dim, seed), "haar-" + std::to_string(dim) + "-" + std::to_string(seed));
}

StateVector haar_random_state(std::size_t dim, std::uint64_t seed) {
    return StateVector::normalized(haar_unitary(dim, seed).col(0));
}

DensityOperator random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
    if (dim == 0) {
        throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
    }
    if (rank < 1 || rank > dim) {
        throw Error(ErrorKind::InvalidArgument,
                    "rank " + std::to_string(rank) + " outside [1, " + std::to_string(dim) + "]");
    }
    Rng rng(seed);
    CMatrix g = ginibre(dim, rank, rng);
    CMatrix m = g * g.adjoint();
    m /= m.trace().real();
    // G G^dagger is Hermitian only up to rounding in the off-diagonal sums.
    m = (0.5 * (m + m.adjoint())).eval();
    return DensityOperator::from_matrix(std::move(m));
}

}  // namespace kdcalc
