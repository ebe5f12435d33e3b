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
#include <string_view>
#include <vector>

#include "kdcalc/linalg.hpp"

/// Pre- and post-selection fixtures whose conditional probabilities are
/// negative or complex. Expected values are written down as exact rationals
/// and only converted to floating point when a fixture is built.
namespace kdcalc::scenarios {

struct Rational {
    long long num = 0;
    long long den = 1;

    double value() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

struct ExactComplex {
    Rational re;
    Rational im;

    Complex value() const {
        return {re.value(), im.value()};
    }
};

struct Scenario {
    std::string name;
    std::size_t dim = 0;
    StateVector pre_state;
    StateVector post_state;
    OrthonormalBasis measured_basis;
    std::vector<Complex> expected_weak_values;
    std::string provenance_note;
};

/// Three boxes, pre (|1>+|2>+|3>)/sqrt3, post (|1>+|2>-|3>)/sqrt3.
Scenario three_box();
/// Two-qubit Hardy state (|NN>+|NO>+|ON>)/sqrt3 post-selected on (|N>-|O>)(|N>-|O>)/2.
Scenario hardy();
/// Qubit |0> post-selected on |+>, measured in the Y eigenbasis.
Scenario mub_qubit_phase();

/// CLI names: "three-box", "hardy", "mub-qubit".
std::vector<std::string> scenario_names();
/// Throws InvalidArgument listing the available names.
Scenario by_name(std::string_view name);

struct EntryCheck {
    std::string label;
    Complex expected;
    Complex formula;
    Complex simulated;
    double formula_deviation = 0.0;
    double simulation_deviation = 0.0;
    bool formula_pass = false;
    bool simulation_pass = false;

    bool pass() const {
        return formula_pass && simulation_pass;
    }
};

struct VerificationReport {
    std::string scenario;
    double coupling = 0.01;
    double formula_tolerance = 1e-12;
    double simulation_tolerance = 0.1;
    Complex expected_sum;
    bool sum_pass = false;
    std::vector<EntryCheck> entries;

    bool all_pass() const;
};

/// Recomputes every expected weak value from the closed-form conditional
/// probability and from an exact-mode meter simulation at `coupling`.
VerificationReport verify(const Scenario &scenario, double coupling = 0.01);

}  // namespace kdcalc::scenarios
