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

#include "kdcalc/scenarios.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "kdcalc/kdq.hpp"
#include "oracle.hpp"

using namespace kdcalc;
using namespace kdcalc::scenarios;

namespace {

void expect_values(const Scenario &s, const std::vector<Complex> &expected) {
    ASSERT_EQ(s.expected_weak_values.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_EQ(s.expected_weak_values[i], expected[i]) << s.name << " entry " << i;
    }
}

Complex sum(const std::vector<Complex> &v) {
    Complex s = 0;
    for (Complex x : v) {
        s += x;
    }
    return s;
}

}  // namespace

TEST(scenarios, stored_values) {
    expect_values(three_box(), {1.0, 1.0, -1.0});
    expect_values(hardy(), {-1.0, 1.0, 1.0, 0.0});
    expect_values(mub_qubit_phase(), {Complex(0.5, 0.5), Complex(0.5, -0.5)});
}

TEST(scenarios, completeness) {
    for (const auto &name : scenario_names()) {
        auto s = by_name(name);
        EXPECT_LT(std::abs(sum(s.expected_weak_values) - 1.0), 1e-12) << name;
        EXPECT_EQ(s.name, name);
        EXPECT_FALSE(s.provenance_note.empty());
    }
}

TEST(scenarios, stored_values_agree_with_brute_force_oracle) {
    for (const auto &name : scenario_names()) {
        auto s = by_name(name);
        auto a = oracle::vec(s.pre_state);
        auto b = oracle::vec(s.post_state);
        for (std::size_t i = 0; i < s.dim; ++i) {
            auto m = oracle::vec(s.measured_basis.vector(i));
            EXPECT_LT(std::abs(oracle::weak_value(a, b, m) - s.expected_weak_values[i]), 1e-12) << name << " " << i;
            EXPECT_LT(std::abs(kdq::conditional_weak_value(s.pre_state, s.post_state, s.measured_basis.vector(i)) -
                               s.expected_weak_values[i]),
                      1e-12);
        }
    }
}

TEST(scenarios, hardy_overlap) {
    auto s = hardy();
    EXPECT_NEAR(inner_product(s.post_state, s.pre_state).real(), -1.0 / (2.0 * std::sqrt(3.0)), 1e-15);
}

TEST(scenarios, mub_action_phases) {
    auto s = mub_qubit_phase();
    auto p0 = kdq::action_phase(s.pre_state, s.post_state, s.measured_basis.vector(0));
    auto p1 = kdq::action_phase(s.pre_state, s.post_state, s.measured_basis.vector(1));
    EXPECT_NEAR(p0.value, std::numbers::pi / 4, 1e-12);
    EXPECT_NEAR(p1.value, -std::numbers::pi / 4, 1e-12);
}

TEST(scenarios, negative_and_complex_values_present) {
    bool negative = false;
    bool complex = false;
    for (const auto &name : scenario_names()) {
        for (Complex w : by_name(name).expected_weak_values) {
            negative = negative || w.real() < 0.0;
            complex = complex || w.imag() != 0.0;
        }
    }
    EXPECT_TRUE(negative);
    EXPECT_TRUE(complex);
}

TEST(verify, builtins_pass) {
    for (const auto &name : scenario_names()) {
        auto report = verify(by_name(name));
        EXPECT_TRUE(report.all_pass()) << name;
        for (const auto &e : report.entries) {
            EXPECT_LE(e.formula_deviation, 1e-12);
            EXPECT_LE(e.simulation_deviation, 0.1);
        }
    }
}

TEST(verify, corrupted_entry_is_flagged_alone) {
    auto s = hardy();
    s.expected_weak_values[2] = Complex(0.5, 0.0);
    auto report = verify(s);
    EXPECT_FALSE(report.all_pass());
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
        EXPECT_EQ(report.entries[i].pass(), i != 2) << i;
    }
}

TEST(by_name, unknown_lists_choices) {
    try {
        by_name("nosuch");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
        EXPECT_NE(std::string(e.what()).find("three-box"), std::string::npos);
    }
}
