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

#include <cstddef>
#include <string>
#include <vector>

#include "kdcalc/linalg.hpp"

/// Kirkwood-Dirac calculus: joint quasiprobabilities over a pair of bases,
/// their inversion to a density operator, complex conditional probabilities
/// and the complex Bayes rule built from them. All functions are pure.
namespace kdcalc::kdq {

/// rho(a_j, b_k) stored at (j, k). The first index runs over the weakly
/// measured basis A, the second over the post-selected basis B.
class KDDistribution {
   public:
    /// Checks squareness, finiteness and |sum - 1| <= normalization_tol.
    static KDDistribution from_values(CMatrix values, std::string basis_a_id, std::string basis_b_id,
                                      double normalization_tol = default_tolerances().kd_normalization);

    std::size_t dim() const {
        return static_cast<std::size_t>(values_.rows());
    }
    const std::string &basis_a_id() const {
        return basis_a_id_;
    }
    const std::string &basis_b_id() const {
        return basis_b_id_;
    }
    const CMatrix &values() const {
        return values_;
    }
    Complex operator()(std::size_t j, std::size_t k) const {
        return values_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    }
    Complex total() const {
        return values_.sum();
    }

   private:
    KDDistribution(CMatrix values, std::string a, std::string b)
        : values_(std::move(values)), basis_a_id_(std::move(a)), basis_b_id_(std::move(b)) {
    }
    CMatrix values_;
    std::string basis_a_id_;
    std::string basis_b_id_;
};

/// <b_k|a_j> at (j, k).
CMatrix overlap_matrix(const OrthonormalBasis &a, const OrthonormalBasis &b);

/// min_{j,k} |<b_k|a_j>|
double min_overlap(const OrthonormalBasis &a, const OrthonormalBasis &b);

/// rho(a_j, b_k) = <b_k|a_j> <a_j|rho|b_k>
KDDistribution kd_distribution(const DensityOperator &rho, const OrthonormalBasis &a, const OrthonormalBasis &b);

struct Reconstruction {
    DensityOperator density;
    /// max |M - M^dagger| of the raw sum, before symmetrization.
    double hermiticity_deviation = 0.0;
    double min_overlap = 0.0;
    std::vector<std::string> warnings;
};

/// rho = sum_{j,k} kd(j,k) |a_j><b_k| / <b_k|a_j>, symmetrized as (rho + rho^dagger)/2.
/// Eigenvalues are not clipped; a reconstruction that is not a valid density
/// operator raises InvalidState.
Reconstruction reconstruct_density(const KDDistribution &kd, const OrthonormalBasis &a, const OrthonormalBasis &b,
                                   const Tolerances &tol = default_tolerances());

struct Marginals {
    std::vector<double> over_a;
    std::vector<double> over_b;
};

/// Row and column sums. Raises ImaginaryLeak if any sum is not real, and
/// InvalidDistribution if a sum falls outside [0, 1] or a marginal does not
/// total 1.
Marginals marginals(const KDDistribution &kd, const Tolerances &tol = default_tolerances());

/// p(m|a,b) = <b|m><m|a> / <b|a>
Complex conditional_weak_value(const StateVector &a, const StateVector &b, const StateVector &m,
                               const Tolerances &tol = default_tolerances());

/// p(m | a_j, b_k) for every m, j, k. Cells with |<b_k|a_j>| below the
/// overlap floor are flagged undefined and hold zero.
class ConditionalKernel {
   public:
    ConditionalKernel(std::vector<CMatrix> slices, Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> defined,
                      std::string basis_a_id, std::string basis_b_id, std::string basis_m_id);

    std::size_t dim() const {
        return slices_.size();
    }
    Complex operator()(std::size_t m, std::size_t j, std::size_t k) const {
        return slices_[m](static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    }
    /// The (j, k) matrix for outcome m.
    const CMatrix &slice(std::size_t m) const {
        return slices_.at(m);
    }
    bool defined(std::size_t j, std::size_t k) const {
        return defined_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    }
    std::size_t undefined_count() const;
    const std::string &basis_a_id() const {
        return basis_a_id_;
    }
    const std::string &basis_b_id() const {
        return basis_b_id_;
    }
    const std::string &basis_m_id() const {
        return basis_m_id_;
    }

   private:
    std::vector<CMatrix> slices_;
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> defined_;
    std::string basis_a_id_;
    std::string basis_b_id_;
    std::string basis_m_id_;
};

ConditionalKernel conditional_kernel(const OrthonormalBasis &a, const OrthonormalBasis &b, const OrthonormalBasis &m,
                                     const Tolerances &tol = default_tolerances());

/// P(m) = sum_{j,k} kd(j,k) p(m|a_j,b_k). Returns real parts after checking
/// realness, range and normalization.
std::vector<double> predict_probabilities(const KDDistribution &kd, const ConditionalKernel &kernel,
                                          const Tolerances &tol = default_tolerances());

/// Maps the (A, B) distribution to (A, M): out(j, m) = sum_k kd(j,k) p(m|a_j,b_k).
/// The inverse is the same map with the kernel for (A, M, B).
KDDistribution transform_representation(const KDDistribution &kd, const ConditionalKernel &kernel,
                                        const Tolerances &tol = default_tolerances());

/// S = hbar * Arg p(m|a,b). value / hbar lies in (-pi, pi].
struct ActionPhase {
    double value = 0.0;
    double hbar = 1.0;

    double radians() const {
        return value / hbar;
    }
};

/// Arg(z) on (-pi, pi]; the -pi boundary maps to +pi.
double principal_arg(Complex z);

ActionPhase action_phase(const StateVector &a, const StateVector &b, const StateVector &m, double hbar = 1.0,
                         const Tolerances &tol = default_tolerances());

}  // namespace kdcalc::kdq
