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
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "kdcalc/random.hpp"

using namespace kdcalc;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector plus() {
    return StateVector::normalized(CVector{{1.0, 1.0}});
}

StateVector plus_i() {
    return StateVector::normalized(CVector{{Complex(1.0), Complex(0.0, 1.0)}});
}

ErrorKind kind_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorKind::ParseError;
}

}  // namespace

TEST(inner_product, basis_states) {
    auto e0 = StateVector::basis_state(2, 0);
    auto e1 = StateVector::basis_state(2, 1);
    EXPECT_EQ(inner_product(e0, e0), Complex(1.0));
    EXPECT_EQ(inner_product(e0, e1), Complex(0.0));
    Complex v = inner_product(plus(), e0);
    EXPECT_NEAR(v.real(), kInvSqrt2, 1e-15);
    EXPECT_EQ(v.imag(), 0.0);
}

TEST(inner_product, conjugate_linear_in_first_argument) {
    auto e1 = StateVector::basis_state(2, 1);
    // <(e0 + i e1)/sqrt2 | e1> = -i/sqrt2
    Complex v = inner_product(plus_i(), e1);
    EXPECT_NEAR(v.real(), 0.0, 1e-15);
    EXPECT_NEAR(v.imag(), -kInvSqrt2, 1e-15);
}

TEST(inner_product, dimension_mismatch) {
    EXPECT_EQ(kind_of([] { inner_product(StateVector::basis_state(2, 0), StateVector::basis_state(3, 0)); }),
              ErrorKind::DimensionMismatch);
}

TEST(inner_product, conjugate_symmetry_and_bound) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        std::size_t d = 2 + seed % 7;
        auto x = haar_random_state(d, seed);
        auto y = haar_random_state(d, seed + 1000);
        Complex xy = inner_product(x, y);
        Complex yx = inner_product(y, x);
        EXPECT_LT(std::abs(xy - std::conj(yx)), 1e-15);
        EXPECT_LE(std::abs(xy), 1.0 + 1e-10);
    }
}

TEST(state_vector, rejects_unnormalized) {
    try {
        StateVector::from_amplitudes(CVector{{1.0, 0.5}});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotNormalized);
        EXPECT_NE(std::string(e.what()).find("norm"), std::string::npos);
    }
    EXPECT_EQ(kind_of([] { StateVector::normalized(CVector{{0.0, 0.0}}); }), ErrorKind::InvalidArgument);
}

TEST(density_from_pure, examples) {
    auto r0 = density_from_pure(StateVector::basis_state(2, 0));
    EXPECT_EQ(r0(0, 0), Complex(1.0));
    EXPECT_EQ(r0(0, 1), Complex(0.0));
    EXPECT_EQ(r0(1, 1), Complex(0.0));

    auto rp = density_from_pure(plus());
    for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t k = 0; k < 2; ++k) {
            EXPECT_NEAR(std::abs(rp(j, k) - 0.5), 0.0, 1e-15);
        }
    }

    auto ry = density_from_pure(plus_i());
    EXPECT_LT(std::abs(ry(0, 0) - 0.5), 1e-15);
    EXPECT_LT(std::abs(ry(0, 1) - Complex(0.0, -0.5)), 1e-15);
    EXPECT_LT(std::abs(ry(1, 0) - Complex(0.0, 0.5)), 1e-15);
    EXPECT_LT(std::abs(ry(1, 1) - 0.5), 1e-15);
}

TEST(density_operator, invariant_violations) {
    CMatrix not_hermitian{{0.5, 0.1}, {0.0, 0.5}};
    EXPECT_EQ(kind_of([&] { DensityOperator::from_matrix(not_hermitian); }), ErrorKind::InvalidState);
    CMatrix bad_trace{{0.5, 0.0}, {0.0, 0.6}};
    EXPECT_EQ(kind_of([&] { DensityOperator::from_matrix(bad_trace); }), ErrorKind::InvalidState);
    CMatrix negative{{1.5, 0.0}, {0.0, -0.5}};
    EXPECT_EQ(kind_of([&] { DensityOperator::from_matrix(negative); }), ErrorKind::InvalidState);
}

TEST(validate_basis, examples) {
    auto e0 = StateVector::basis_state(2, 0);
    auto e1 = StateVector::basis_state(2, 1);
    auto z = validate_basis({e0, e1}, {"0", "1"});
    EXPECT_EQ(z.dim(), 2u);

    try {
        validate_basis({e0, e0}, {"a", "b"});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotOrthonormal);
        EXPECT_NE(std::string(e.what()).find("(0, 1)"), std::string::npos) << e.what();
    }

    auto minus = StateVector::normalized(CVector{{1.0, -1.0}});
    EXPECT_NO_THROW(validate_basis({plus(), minus}, {"+", "-"}));
}

TEST(validate_basis, errors) {
    auto e0 = StateVector::basis_state(2, 0);
    auto e1 = StateVector::basis_state(2, 1);
    EXPECT_EQ(kind_of([&] { validate_basis({e0, e1}, {"x", "x"}); }), ErrorKind::DuplicateLabel);
    EXPECT_EQ(kind_of([&] { validate_basis({e0, e1}, {"x"}); }), ErrorKind::DimensionMismatch);
    EXPECT_EQ(kind_of([&] { validate_basis({e0}, {"x"}); }), ErrorKind::DimensionMismatch);
    EXPECT_EQ(kind_of([&] { validate_basis({}, {}); }), ErrorKind::DimensionMismatch);
}

TEST(rng, fixed_seed_stream_is_reproducible) {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 100; ++i) {
        ASSERT_EQ(a.next_u64(), b.next_u64());
    }
    // mt19937_64 is fully specified: the 10000th output of the default seed.
    std::mt19937_64 reference;
    reference.discard(9999);
    EXPECT_EQ(reference(), 9981545732273789042ULL);
}

TEST(rng, uniform_open_interval_and_gaussian_moments) {
    Rng rng(7);
    double sum_re = 0, sum_im = 0, sum_re2 = 0, sum_im2 = 0, sum_cross = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        Complex z = rng.complex_gaussian();
        sum_re += z.real();
        sum_im += z.imag();
        sum_re2 += z.real() * z.real();
        sum_im2 += z.imag() * z.imag();
        sum_cross += z.real() * z.imag();
    }
    // Each part N(0, 1/2): standard error of the variance estimate ~ 0.5*sqrt(2/n) = 0.0016.
    EXPECT_NEAR(sum_re / n, 0.0, 0.01);
    EXPECT_NEAR(sum_im / n, 0.0, 0.01);
    EXPECT_NEAR(sum_re2 / n, 0.5, 0.01);
    EXPECT_NEAR(sum_im2 / n, 0.5, 0.01);
    EXPECT_NEAR(sum_cross / n, 0.0, 0.01);
}

TEST(derive_seed, distinct_per_cell) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t j = 0; j < 16; ++j) {
        for (std::uint64_t k = 0; k < 16; ++k) {
            seen.insert(derive_seed(5, j, k));
        }
    }
    EXPECT_EQ(seen.size(), 256u);
}

TEST(haar_random_basis, deterministic_and_orthonormal) {
    auto b1 = haar_random_basis(3, 1234);
    auto b2 = haar_random_basis(3, 1234);
    EXPECT_EQ(b1.as_columns(), b2.as_columns());
    EXPECT_NE(b1.as_columns(), haar_random_basis(3, 1235).as_columns());
    for (const auto &v : b1.vectors()) {
        EXPECT_NEAR(v.amplitudes().norm(), 1.0, 1e-10);
    }
    EXPECT_EQ(kind_of([] { haar_random_basis(0, 1); }), ErrorKind::InvalidArgument);
}

TEST(haar_random_basis, gram_and_resolution_of_identity) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::size_t d = 1 + seed % 8;
        auto b = haar_random_basis(d, seed);
        double worst_off = 0, worst_diag = 0;
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t k = 0; k < d; ++k) {
                double m = std::abs(inner_product(b.vector(j), b.vector(k)));
                if (j == k) {
                    worst_diag = std::max(worst_diag, std::abs(m - 1.0));
                } else {
                    worst_off = std::max(worst_off, m);
                }
            }
        }
        EXPECT_LT(worst_off, 1e-10);
        EXPECT_LT(worst_diag, 1e-10);

        auto n = static_cast<Eigen::Index>(d);
        CMatrix sum = CMatrix::Zero(n, n);
        for (const auto &v : b.vectors()) {
            sum += v.amplitudes() * v.amplitudes().adjoint();
        }
        EXPECT_LT((sum - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(haar_random_basis, first_row_phases_are_spread) {
    // With the R-diagonal phase fix the distribution is Haar, so the phase of
    // U(0,0) is uniform. Without the fix, Householder QR biases it.
    const int n = 4000;
    double mean_cos = 0, mean_sin = 0;
    for (int s = 0; s < n; ++s) {
        Complex u00 = haar_random_basis(2, static_cast<std::uint64_t>(s)).vector(0)[0];
        double phi = std::arg(u00);
        mean_cos += std::cos(phi) / n;
        mean_sin += std::sin(phi) / n;
    }
    EXPECT_LT(std::abs(mean_cos), 0.05);
    EXPECT_LT(std::abs(mean_sin), 0.05);
}

TEST(random_density, examples_and_invariants) {
    auto pure = random_density(2, 1, 9);
    auto ev = hermitian_eigenvalues(pure.matrix());
    EXPECT_NEAR(ev[0], 0.0, 1e-12);
    EXPECT_NEAR(ev[1], 1.0, 1e-12);

    auto full = random_density(4, 4, 9);
    auto fev = hermitian_eigenvalues(full.matrix());
    double total = 0;
    for (double x : fev) {
        EXPECT_GT(x, 0.0);
        total += x;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);

    EXPECT_EQ(random_density(3, 2, 77).matrix(), random_density(3, 2, 77).matrix());
    EXPECT_EQ(kind_of([] { random_density(3, 0, 1); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] { random_density(3, 4, 1); }), ErrorKind::InvalidArgument);
}

TEST(random_density, property_sweep) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::size_t d = 1 + seed % 8;
        std::size_t rank = 1 + (seed / 8) % d;
        auto rho = random_density(d, rank, seed);
        EXPECT_LT(std::abs(rho.matrix().trace() - 1.0), 1e-10);
        EXPECT_LT(hermiticity_deviation(rho.matrix()), 1e-10);
        auto ev = hermitian_eigenvalues(rho.matrix());
        EXPECT_GT(ev.front(), -1e-9);
        std::size_t numerical_rank = 0;
        for (double x : ev) {
            numerical_rank += x > 1e-10 ? 1 : 0;
        }
        EXPECT_EQ(numerical_rank, rank) << "d=" << d << " seed=" << seed;
    }
}
