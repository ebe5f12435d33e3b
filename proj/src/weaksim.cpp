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

#include "kdcalc/weaksim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kdcalc/random.hpp"

namespace kdcalc::weaksim {

void MeterConfig::validate() const {
    if (!std::isfinite(coupling) || !(coupling > 0.0) || !(coupling < std::numbers::pi / 2)) {
        throw Error(ErrorKind::InvalidArgument, "coupling must lie in (0, pi/2), got " + std::to_string(coupling));
    }
    if (mode == MeterMode::Sampled && shots < 2) {
        throw Error(ErrorKind::ShotBudgetZero,
                    "sampled mode needs at least 2 shots (one per meter quadrature), got " + std::to_string(shots));
    }
}

CMatrix coupling_unitary(const StateVector &a, double coupling) {
    const auto d = static_cast<Eigen::Index>(a.dim());
    CMatrix proj = a.amplitudes() * a.amplitudes().adjoint();
    const Complex i1(0.0, 1.0);
    // (Pi (x) Y)^2 = Pi (x) I, so the exponential closes as
    // I - Pi (x) I + Pi (x) (cos g I - i sin g Y).
    Eigen::Matrix2cd y;
    y << 0.0, -i1, i1, 0.0;
    Eigen::Matrix2cd rot = std::cos(coupling) * Eigen::Matrix2cd::Identity() - i1 * std::sin(coupling) * y;
    Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();

    CMatrix u = CMatrix::Identity(2 * d, 2 * d);
    for (Eigen::Index x = 0; x < d; ++x) {
        for (Eigen::Index z = 0; z < d; ++z) {
            u.block<2, 2>(2 * x, 2 * z) += proj(x, z) * (rot - id2);
        }
    }
    return u;
}

PostselectedMeter couple_and_postselect(const DensityOperator &rho, std::size_t a_index,
                                        const OrthonormalBasis &basis_a, const StateVector &b, double coupling,
                                        const Tolerances &tol) {
    if (rho.dim() != basis_a.dim() || b.dim() != basis_a.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "state, basis and post-selection dimensions differ");
    }
    if (a_index >= basis_a.dim()) {
        throw Error(ErrorKind::InvalidArgument, "a_index out of range");
    }
    MeterConfig{coupling}.validate();

    const auto d = static_cast<Eigen::Index>(rho.dim());
    CMatrix joint = CMatrix::Zero(2 * d, 2 * d);
    for (Eigen::Index x = 0; x < d; ++x) {
        for (Eigen::Index z = 0; z < d; ++z) {
            joint(2 * x, 2 * z) = rho.matrix()(x, z);
        }
    }
    CMatrix u = coupling_unitary(basis_a.vector(a_index), coupling);
    CMatrix evolved = u * joint * u.adjoint();

    // Meter block of (<b| (x) I) evolved (|b> (x) I).
    const CVector &bv = b.amplitudes();
    Eigen::Matrix2cd meter = Eigen::Matrix2cd::Zero();
    for (Eigen::Index x = 0; x < d; ++x) {
        for (Eigen::Index z = 0; z < d; ++z) {
            Complex w = std::conj(bv(x)) * bv(z);
            if (w != Complex(0.0)) {
                meter += w * evolved.block<2, 2>(2 * x, 2 * z);
            }
        }
    }
    double prob = meter.trace().real();
    if (!(prob >= tol.postselect_floor)) {
        throw Error(ErrorKind::PostselectionImpossible,
                    "post-selection probability " + std::to_string(prob) + " is effectively zero");
    }
    CMatrix normalized = meter / prob;
    normalized = (0.5 * (normalized + normalized.adjoint())).eval();
    return {DensityOperator::from_matrix(std::move(normalized), tol), prob};
}

Complex generalized_weak_value(const DensityOperator &rho, const StateVector &a, const StateVector &b,
                               const Tolerances &tol) {
    double pb = rho.probability(b);
    if (pb < tol.postselect_min) {
        throw Error(ErrorKind::PostselectionImpossible, "<b|rho|b> = " + std::to_string(pb));
    }
    return inner_product(b, a) * rho.sandwich(a, b) / pb;
}

namespace {

struct QuadratureMean {
    double mean = 0.0;
    double std_error = 0.0;
};

/// n readouts of a +-1 observable with expectation `expectation`.
QuadratureMean sample_quadrature(double expectation, std::uint64_t n, Rng &rng) {
    double p_plus = std::clamp(0.5 * (1.0 + expectation), 0.0, 1.0);
    std::uint64_t plus = 0;
    for (std::uint64_t s = 0; s < n; ++s) {
        plus += rng.bernoulli(p_plus) ? 1 : 0;
    }
    double nn = static_cast<double>(n);
    double mean = (2.0 * static_cast<double>(plus) - nn) / nn;
    // Unbiased variance of the +-1 outcomes; with a single readout fall back
    // to the largest possible variance, 1.
    double variance = n > 1 ? std::max(0.0, (1.0 - mean * mean) * nn / (nn - 1.0)) : 1.0;
    return {mean, std::sqrt(variance / nn)};
}

}  // namespace

WeakValueEstimate estimate_weak_value(const DensityOperator &rho, std::size_t a_index,
                                      const OrthonormalBasis &basis_a, const StateVector &b, const MeterConfig &cfg,
                                      const Tolerances &tol) {
    cfg.validate();
    if (rho.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "state and post-selection dimensions differ");
    }
    double pb = rho.probability(b);
    if (pb < tol.postselect_min) {
        throw Error(ErrorKind::PostselectionImpossible, "<b|rho|b> = " + std::to_string(pb) + " below " +
                                                            std::to_string(tol.postselect_min));
    }
    PostselectedMeter pm = couple_and_postselect(rho, a_index, basis_a, b, cfg.coupling, tol);
    Complex m01 = pm.meter_state(0, 1);
    double ex = 2.0 * m01.real();
    double ey = -2.0 * m01.imag();
    const double scale = 2.0 * cfg.coupling;

    WeakValueEstimate out;
    out.postselect_probability = pm.postselect_probability;
    if (cfg.mode == MeterMode::Exact) {
        out.value = Complex(ex, ey) / scale;
        return out;
    }

    std::uint64_t n_y = cfg.shots / 2;
    std::uint64_t n_x = cfg.shots - n_y;
    Rng rng(cfg.seed);
    QuadratureMean qx = sample_quadrature(ex, n_x, rng);
    QuadratureMean qy = sample_quadrature(ey, n_y, rng);
    out.value = Complex(qx.mean, qy.mean) / scale;
    out.std_error_re = qx.std_error / scale;
    out.std_error_im = qy.std_error / scale;
    out.shots_used = cfg.shots;
    return out;
}

KDEstimate estimate_kd(const DensityOperator &rho, const OrthonormalBasis &basis_a, const OrthonormalBasis &basis_b,
                       const MeterConfig &cfg, const Tolerances &tol) {
    cfg.validate();
    if (rho.dim() != basis_a.dim() || basis_a.dim() != basis_b.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "state and basis dimensions differ");
    }
    const auto d = static_cast<Eigen::Index>(rho.dim());
    KDEstimate out{basis_a.id(), basis_b.id(), CMatrix::Zero(d, d), Eigen::MatrixXd::Zero(d, d),
                   Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(d, d, false)};
    for (Eigen::Index k = 0; k < d; ++k) {
        const StateVector &bk = basis_b.vector(static_cast<std::size_t>(k));
        // rho|b> = 0 whenever <b|rho|b> = 0, so the exact entry is zero too.
        double pb = rho.probability(bk);
        if (pb < tol.postselect_min) {
            continue;
        }
        for (Eigen::Index j = 0; j < d; ++j) {
            MeterConfig cell = cfg;
            cell.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(k));
            WeakValueEstimate w = estimate_weak_value(rho, static_cast<std::size_t>(j), basis_a, bk, cell, tol);
            out.values(j, k) = w.value * pb;
            out.std_errors(j, k) = std::hypot(w.std_error_re, w.std_error_im) * pb;
            out.postselectable(j, k) = true;
        }
    }
    return out;
}

}  // namespace kdcalc::weaksim
