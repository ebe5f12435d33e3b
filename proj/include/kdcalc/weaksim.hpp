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
#include <cstdint>
#include <string>
#include <vector>

#include "kdcalc/linalg.hpp"

/// Von Neumann weak measurement of a rank-one projector with a qubit meter,
/// followed by post-selection of the system.
///
/// The system couples to the meter through U = exp(-i g Pi_a (x) Y), starting
/// from meter state |0>. After post-selecting the system on |b>, the meter is
/// approximately |0> + g w |1> with w the weak value of Pi_a, so
/// (<X> + i<Y>) / (2g) estimates w to first order in g. No higher-order
/// correction is applied.
namespace kdcalc::weaksim {

enum class MeterMode { Exact, Sampled };

struct MeterConfig {
    /// Conditional meter rotation angle g, 0 < g < pi/2.
    double coupling = 0.01;
    MeterMode mode = MeterMode::Exact;
    /// Total meter readouts per weak value in sampled mode, split between the
    /// X and Y quadratures (remainder to X).
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;

    /// Throws InvalidArgument on a bad coupling, ShotBudgetZero when sampled
    /// mode would leave a quadrature without readouts.
    void validate() const;
};

/// exp(-i g |a><a| (x) Y) on system (x) meter, composite index = 2 * system + meter.
CMatrix coupling_unitary(const StateVector &a, double coupling);

struct PostselectedMeter {
    DensityOperator meter_state;
    double postselect_probability = 0.0;
};

PostselectedMeter couple_and_postselect(const DensityOperator &rho, std::size_t a_index,
                                        const OrthonormalBasis &basis_a, const StateVector &b, double coupling,
                                        const Tolerances &tol = default_tolerances());

struct WeakValueEstimate {
    Complex value;
    double std_error_re = 0.0;
    double std_error_im = 0.0;
    double postselect_probability = 0.0;
    std::uint64_t shots_used = 0;
};

/// tr(Pi_b Pi_a rho) / tr(Pi_b rho), the value the estimator converges to.
Complex generalized_weak_value(const DensityOperator &rho, const StateVector &a, const StateVector &b,
                               const Tolerances &tol = default_tolerances());

WeakValueEstimate estimate_weak_value(const DensityOperator &rho, std::size_t a_index,
                                      const OrthonormalBasis &basis_a, const StateVector &b, const MeterConfig &cfg,
                                      const Tolerances &tol = default_tolerances());

struct KDEstimate {
    std::string basis_a_id;
    std::string basis_b_id;
    CMatrix values;
    Eigen::MatrixXd std_errors;
    /// False where <b_k|rho|b_k> is too small to post-select; such cells hold 0.
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> postselectable;

    std::size_t dim() const {
        return static_cast<std::size_t>(values.rows());
    }
};

/// Weak value of each Pi_{a_j} post-selected on b_k, times <b_k|rho|b_k>.
/// Sampled cells draw from independent streams seeded by derive_seed(seed, j, k).
KDEstimate estimate_kd(const DensityOperator &rho, const OrthonormalBasis &basis_a, const OrthonormalBasis &basis_b,
                       const MeterConfig &cfg, const Tolerances &tol = default_tolerances());

}  // namespace kdcalc::weaksim
