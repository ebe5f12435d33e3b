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

#include <cstdint>
#include <random>

#include "kdcalc/linalg.hpp"

namespace kdcalc {

/// Seeded random stream used for every stochastic routine in the library.
///
/// The engine is std::mt19937_64. Uniforms and Gaussians are computed
/// directly from engine words, so a seed yields the same numbers on every
/// conforming toolchain.
///
/// - uniform(): top 53 bits of one engine word, offset by half an ulp, giving
///   a value in the open interval (0, 1).
/// - complex_gaussian(): Box-Muller on two uniforms. Real and imaginary parts
///   are independent N(0, 1/2), so E|z|^2 = 1.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {
    }

    std::uint64_t next_u64() {
        return engine_();
    }
    double uniform();
    Complex complex_gaussian();
    bool bernoulli(double p) {
        return uniform() < p;
    }

   private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for cell (j, k) of a grid: seed XOR splitmix64((j << 32) | k).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t j, std::uint64_t k);

/// rows x cols matrix of i.i.d. complex Gaussians, filled row by row.
CMatrix ginibre(std::size_t rows, std::size_t cols, Rng &rng);

/// Columns of a Haar-random unitary: QR of a Ginibre matrix with the phases
/// of R's diagonal moved into Q.
OrthonormalBasis haar_random_basis(std::size_t dim, std::uint64_t seed);

/// First column of a Haar-random unitary.
StateVector haar_random_state(std::size_t dim, std::uint64_t seed);

/// G G^dagger / tr(G G^dagger) for a dim x rank Ginibre G.
DensityOperator random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);

}  // namespace kdcalc
