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

#include "kdcalc/kdq.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace kdcalc::kdq {

namespace {

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(6);
    out << x;
    return out.str();
}

void require_same_dim(std::size_t lhs, std::size_t rhs, const char *what) {
    if (lhs != rhs) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + ": dimensions " + std::to_string(lhs) + " and " + std::to_string(rhs));
    }
}

void require_overlap(Complex overlap, const Tolerances &tol, const std::string &where) {
    if (std::abs(overlap) < tol.overlap_floor) {
        throw Error(ErrorKind::OverlapTooSmall,
                    where + ": |<b|a>| = " + fmt(std::abs(overlap)) + " below floor " + fmt(tol.overlap_floor));
    }
}

std::string pair_name(const OrthonormalBasis &a, std::size_t j, const OrthonormalBasis &b, std::size_t k) {
    return "pair (a=" + a.label(j) + ", b=" + b.label(k) + ") at (" + std::to_string(j) + ", " + std::to_string(k) +
           ")";
}

}  // namespace

KDDistribution KDDistribution::from_values(CMatrix values, std::string basis_a_id, std::string basis_b_id,
                                           double normalization_tol) {
    if (values.rows() == 0 || values.rows() != values.cols()) {
        throw Error(ErrorKind::InvalidDistribution, "distribution must be a non-empty square matrix");
    }
    if (!values.allFinite()) {
        throw Error(ErrorKind::InvalidDistribution, "distribution contains NaN or Inf");
    }
    Complex sum = values.sum();
    if (std::abs(sum - 1.0) > normalization_tol) {
        throw Error(ErrorKind::InvalidDistribution,
                    "entries sum to " + fmt(sum.real()) + (sum.imag() >= 0 ? "+" : "") + fmt(sum.imag()) + "i, not 1");
    }
    return KDDistribution(std::move(values), std::move(basis_a_id), std::move(basis_b_id));
}

CMatrix overlap_matrix(const OrthonormalBasis &a, const OrthonormalBasis &b) {
    require_same_dim(a.dim(), b.dim(), "overlap matrix");
    // (B^dagger A)(k, j) = <b_k|a_j>; transpose to index by (j, k).
    return (b.as_columns().adjoint() * a.as_columns()).transpose();
}

double min_overlap(const OrthonormalBasis &a, const OrthonormalBasis &b) {
    return overlap_matrix(a, b).cwiseAbs().minCoeff();
}

KDDistribution kd_distribution(const DensityOperator &rho, const OrthonormalBasis &a, const OrthonormalBasis &b) {
    require_same_dim(rho.dim(), a.dim(), "kd_distribution state vs basis A");
    require_same_dim(a.dim(), b.dim(), "kd_distribution basis A vs basis B");
    const auto d = static_cast<Eigen::Index>(a.dim());
    CMatrix ua = a.as_columns();
    CMatrix ub = b.as_columns();
    // <a_j|rho|b_k> at (j, k)
    CMatrix sandwiched = ua.adjoint() * rho.matrix() * ub;
    CMatrix overlaps = overlap_matrix(a, b);
    CMatrix values(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = 0; k < d; ++k) {
            values(j, k) = overlaps(j, k) * sandwiched(j, k);
        }
    }
    return KDDistribution::from_values(std::move(values), a.id(), b.id());
}

Reconstruction reconstruct_density(const KDDistribution &kd, const OrthonormalBasis &a, const OrthonormalBasis &b,
                                   const Tolerances &tol) {
    require_same_dim(kd.dim(), a.dim(), "reconstruct_density distribution vs basis A");
    require_same_dim(a.dim(), b.dim(), "reconstruct_density basis A vs basis B");
    if (kd.basis_a_id() != a.id() || kd.basis_b_id() != b.id()) {
        throw Error(ErrorKind::BasisTagMismatch, "distribution is tagged (" + kd.basis_a_id() + ", " +
                                                     kd.basis_b_id() + ") but bases are (" + a.id() + ", " + b.id() +
                                                     ")");
    }
    const std::size_t d = kd.dim();
    CMatrix overlaps = overlap_matrix(a, b);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            require_overlap(overlaps(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)), tol,
                            pair_name(a, j, b, k));
        }
    }

    const auto n = static_cast<Eigen::Index>(d);
    CMatrix raw = CMatrix::Zero(n, n);
    for (std::size_t j = 0; j < d; ++j) {
        const CVector &aj = a.vector(j).amplitudes();
        for (std::size_t k = 0; k < d; ++k) {
            const CVector &bk = b.vector(k).amplitudes();
            Complex weight = kd(j, k) / overlaps(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
            raw.noalias() += weight * aj * bk.adjoint();
        }
    }

    Reconstruction out{DensityOperator::from_matrix(0.5 * (raw + raw.adjoint()), tol), hermiticity_deviation(raw),
                       overlaps.cwiseAbs().minCoeff(), {}};
    if (out.min_overlap < tol.conditioning_warning) {
        out.warnings.push_back("ill-conditioned basis pair: min |<b|a>| = " + fmt(out.min_overlap) + " < " +
                               fmt(tol.conditioning_warning) + "; reconstruction amplifies errors by its inverse");
    }
    return out;
}

Marginals marginals(const KDDistribution &kd, const Tolerances &tol) {
    const auto d = static_cast<Eigen::Index>(kd.dim());
    auto check = [&](Complex s, const char *axis, Eigen::Index i) {
        if (std::abs(s.imag()) >= tol.marginal_imaginary) {
            throw Error(ErrorKind::ImaginaryLeak, std::string(axis) + " marginal " + std::to_string(i) +
                                                      " has imaginary part " + fmt(s.imag()));
        }
        if (s.real() < -tol.kd_normalization || s.real() > 1.0 + tol.kd_normalization) {
            throw Error(ErrorKind::InvalidDistribution,
                        std::string(axis) + " marginal " + std::to_string(i) + " = " + fmt(s.real()) + " outside [0, 1]");
        }
        return s.real();
    };
    Marginals out;
    out.over_a.reserve(static_cast<std::size_t>(d));
    out.over_b.reserve(static_cast<std::size_t>(d));
    for (Eigen::Index j = 0; j < d; ++j) {
        out.over_a.push_back(check(kd.values().row(j).sum(), "a", j));
    }
    for (Eigen::Index k = 0; k < d; ++k) {
        out.over_b.push_back(check(kd.values().col(k).sum(), "b", k));
    }
    auto total = [](const std::vector<double> &v) {
        double s = 0.0;
        for (double x : v) {
            s += x;
        }
        return s;
    };
    for (const auto *v : {&out.over_a, &out.over_b}) {
        double s = total(*v);
        if (std::abs(s - 1.0) > tol.kd_normalization) {
            throw Error(ErrorKind::InvalidDistribution, "marginal sums to " + fmt(s));
        }
    }
    return out;
}

Complex conditional_weak_value(const StateVector &a, const StateVector &b, const StateVector &m,
                               const Tolerances &tol) {
    require_same_dim(a.dim(), b.dim(), "conditional_weak_value a vs b");
    require_same_dim(a.dim(), m.dim(), "conditional_weak_value a vs m");
    Complex ba = inner_product(b, a);
    require_overlap(ba, tol, "conditional_weak_value");
    return inner_product(b, m) * inner_product(m, a) / ba;
}

ConditionalKernel::ConditionalKernel(std::vector<CMatrix> slices,
                                     Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> defined,
                                     std::string basis_a_id, std::string basis_b_id, std::string basis_m_id)
    : slices_(std::move(slices)),
      defined_(std::move(defined)),
      basis_a_id_(std::move(basis_a_id)),
      basis_b_id_(std::move(basis_b_id)),
      basis_m_id_(std::move(basis_m_id)) {
    const auto d = static_cast<Eigen::Index>(slices_.size());
    if (defined_.rows() != d || defined_.cols() != d) {
        throw Error(ErrorKind::DimensionMismatch, "kernel mask shape does not match kernel dimension");
    }
    for (const auto &s : slices_) {
        if (s.rows() != d || s.cols() != d) {
            throw Error(ErrorKind::DimensionMismatch, "kernel slice shape does not match kernel dimension");
        }
    }
}

std::size_t ConditionalKernel::undefined_count() const {
    return static_cast<std::size_t>(defined_.size() - defined_.count());
}

ConditionalKernel conditional_kernel(const OrthonormalBasis &a, const OrthonormalBasis &b, const OrthonormalBasis &m,
                                     const Tolerances &tol) {
    require_same_dim(a.dim(), b.dim(), "conditional_kernel A vs B");
    require_same_dim(a.dim(), m.dim(), "conditional_kernel A vs M");
    const auto d = static_cast<Eigen::Index>(a.dim());
    CMatrix ab = overlap_matrix(a, b);  // <b_k|a_j>
    CMatrix am = overlap_matrix(a, m);  // <m_i|a_j> at (j, i)
    CMatrix bm = overlap_matrix(b, m);  // <m_i|b_k> at (k, i)

    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> defined(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = 0; k < d; ++k) {
            defined(j, k) = std::abs(ab(j, k)) >= tol.overlap_floor;
        }
    }

    std::vector<CMatrix> slices;
    slices.reserve(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) {
        CMatrix s = CMatrix::Zero(d, d);
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index k = 0; k < d; ++k) {
                if (defined(j, k)) {
                    // <b_k|m_i> = conj(<m_i|b_k>)
                    s(j, k) = std::conj(bm(k, i)) * am(j, i) / ab(j, k);
                }
            }
        }
        slices.push_back(std::move(s));
    }
    return ConditionalKernel(std::move(slices), std::move(defined), a.id(), b.id(), m.id());
}

namespace {

void require_compatible(const KDDistribution &kd, const ConditionalKernel &kernel, const char *what) {
    require_same_dim(kd.dim(), kernel.dim(), what);
    if (kd.basis_a_id() != kernel.basis_a_id() || kd.basis_b_id() != kernel.basis_b_id()) {
        throw Error(ErrorKind::BasisTagMismatch, std::string(what) + ": distribution is tagged (" + kd.basis_a_id() +
                                                     ", " + kd.basis_b_id() + ") but kernel is for (" +
                                                     kernel.basis_a_id() + ", " + kernel.basis_b_id() + ")");
    }
    if (std::size_t n = kernel.undefined_count(); n > 0) {
        throw Error(ErrorKind::UndefinedCells, std::string(what) + ": kernel has " + std::to_string(n) +
                                                   " undefined (a, b) cells with vanishing overlap");
    }
}

}  // namespace

std::vector<double> predict_probabilities(const KDDistribution &kd, const ConditionalKernel &kernel,
                                          const Tolerances &tol) {
    require_compatible(kd, kernel, "predict_probabilities");
    std::vector<double> out;
    out.reserve(kernel.dim());
    double total = 0.0;
    for (std::size_t m = 0; m < kernel.dim(); ++m) {
        Complex p = kd.values().cwiseProduct(kernel.slice(m)).sum();
        if (std::abs(p.imag()) >= tol.prediction) {
            throw Error(ErrorKind::ImaginaryLeak,
                        "P(m=" + std::to_string(m) + ") has imaginary part " + fmt(p.imag()));
        }
        if (p.real() < -tol.prediction || p.real() > 1.0 + tol.prediction) {
            throw Error(ErrorKind::InvalidDistribution,
                        "P(m=" + std::to_string(m) + ") = " + fmt(p.real()) + " outside [0, 1]");
        }
        out.push_back(p.real());
        total += p.real();
    }
    if (std::abs(total - 1.0) > tol.prediction) {
        throw Error(ErrorKind::InvalidDistribution, "predicted probabilities sum to " + fmt(total));
    }
    return out;
}

KDDistribution transform_representation(const KDDistribution &kd, const ConditionalKernel &kernel,
                                        const Tolerances &tol) {
    require_compatible(kd, kernel, "transform_representation");
    const auto d = static_cast<Eigen::Index>(kd.dim());
    CMatrix out(d, d);
    for (Eigen::Index m = 0; m < d; ++m) {
        const CMatrix &slice = kernel.slice(static_cast<std::size_t>(m));
        for (Eigen::Index j = 0; j < d; ++j) {
            out(j, m) = kd.values().row(j).cwiseProduct(slice.row(j)).sum();
        }
    }
    // Normalization of the image is exact only up to kernel completeness.
    return KDDistribution::from_values(std::move(out), kd.basis_a_id(), kernel.basis_m_id(),
                                       tol.kernel_completeness);
}

double principal_arg(Complex z) {
    double phi = std::arg(z);
    return phi <= -std::numbers::pi ? std::numbers::pi : phi;
}

ActionPhase action_phase(const StateVector &a, const StateVector &b, const StateVector &m, double hbar,
                         const Tolerances &tol) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw Error(ErrorKind::InvalidArgument, "hbar must be a positive finite number");
    }
    Complex p = conditional_weak_value(a, b, m, tol);
    if (std::abs(p) < tol.magnitude_floor) {
        throw Error(ErrorKind::ZeroWeakValue,
                    "|p(m|a,b)| = " + fmt(std::abs(p)) + " below " + fmt(tol.magnitude_floor) + "; phase undefined");
    }
    return ActionPhase{hbar * principal_arg(p), hbar};
}

}  // namespace kdcalc::kdq
