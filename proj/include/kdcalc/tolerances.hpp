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

namespace kdcalc {

/// Numerical thresholds shared by every module. All comparisons against
/// "within tolerance" in the library read from one of these fields.
struct Tolerances {
    /// |norm - 1| allowed for a StateVector.
    double normalization = 1e-10;
    /// Max elementwise |M - M^dagger| for a DensityOperator.
    double hermiticity = 1e-10;
    /// |trace - 1| for a DensityOperator.
    double trace = 1e-10;
    /// Smallest admissible eigenvalue of a DensityOperator.
    double min_eigenvalue = -1e-9;
    /// Max |<j|k> - delta_jk| for an OrthonormalBasis.
    double orthonormality = 1e-10;
    /// |sum - 1| for a Kirkwood-Dirac distribution and its marginals.
    double kd_normalization = 1e-10;
    /// Largest imaginary part tolerated on a marginal sum.
    double marginal_imaginary = 1e-10;
    /// Hard division guard on |<b|a>|.
    double overlap_floor = 1e-8;
    /// Below this minimum overlap a reconstruction carries a warning.
    double conditioning_warning = 1e-3;
    /// |p(m|a,b)| below which the action phase is undefined.
    double magnitude_floor = 1e-12;
    /// |sum_m p(m|a,b) - 1| on defined kernel cells.
    double kernel_completeness = 1e-9;
    /// Realness, range and normalization checks on predicted probabilities.
    double prediction = 1e-9;
    /// Smallest post-selection probability the meter model accepts.
    double postselect_floor = 1e-14;
    /// Smallest <b|rho|b> for which a weak value is estimated.
    double postselect_min = 1e-10;
};

inline const Tolerances &default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

}  // namespace kdcalc
