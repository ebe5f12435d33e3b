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
#include <initializer_list>

#include "kdcalc/kdq.hpp"
#include "kdcalc/weaksim.hpp"

namespace kdcalc::scenarios {

namespace {

// Gaussian-integer amplitudes, normalized on load.
StateVector from_integers(std::initializer_list<std::pair<int, int>> amps) {
    CVector v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (auto [re, im] : amps) {
        v(i++) = Complex(re, im);
    }
    return StateVector::normalized(std::move(v));
}

std::vector<Complex> render(std::initializer_list<ExactComplex> values) {
    std::vector<Complex> out;
    for (const auto &v : values) {
        out.push_back(v.value());
    }
    return out;
}

Scenario checked(Scenario s) {
    Complex sum(0.0);
    for (Complex w : s.expected_weak_values) {
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw Error(ErrorKind::InvalidArgument, s.name + ": expected weak values do not sum to 1");
    }
    if (std::abs(inner_product(s.post_state, s.pre_state)) < default_tolerances().overlap_floor) {
        throw Error(ErrorKind::OverlapTooSmall, s.name + ": pre and post selection are orthogonal");
    }
    if (s.expected_weak_values.size() != s.dim || s.measured_basis.dim() != s.dim) {
        throw Error(ErrorKind::DimensionMismatch, s.name + ": fixture dimensions disagree");
    }
    return s;
}

constexpr ExactComplex real(long long num, long long den = 1) {
    return {{num, den}, {0, 1}};
}

}  // namespace

Scenario three_box() {
    auto basis = validate_basis({StateVector::basis_state(3, 0), StateVector::basis_state(3, 1),
                                 StateVector::basis_state(3, 2)},
                                {"box1", "box2", "box3"}, "boxes");
    return checked({
        "three-box",
        3,
        from_integers({{1, 0}, {1, 0}, {1, 0}}),
        from_integers({{1, 0}, {1, 0}, {-1, 0}}),
        std::move(basis),
        render({real(1), real(1), real(-1)}),
        "<post|pre> = 1/3; <post|box_i><box_i|pre> = (1/3, 1/3, -1/3), so p(box_i) = (1, 1, -1).",
    });
}

Scenario hardy() {
    auto basis = validate_basis({StateVector::basis_state(4, 0), StateVector::basis_state(4, 1),
                                 StateVector::basis_state(4, 2), StateVector::basis_state(4, 3)},
                                {"NN", "NO", "ON", "OO"}, "hardy-product");
    return checked({
        "hardy",
        4,
        from_integers({{1, 0}, {1, 0}, {1, 0}, {0, 0}}),
        from_integers({{1, 0}, {-1, 0}, {-1, 0}, {1, 0}}),
        std::move(basis),
        render({real(-1), real(1), real(1), real(0)}),
        "<post|pre> = -1/(2 sqrt3); numerators (1, -1, -1, 0)/(2 sqrt3) over (NN, NO, ON, OO) give "
        "p = (-1, 1, 1, 0).",
    });
}

Scenario mub_qubit_phase() {
    auto basis = validate_basis({from_integers({{1, 0}, {0, 1}}), from_integers({{1, 0}, {0, -1}})}, {"+i", "-i"},
                                "y-eigenbasis");
    return checked({
        "mub-qubit",
        2,
        from_integers({{1, 0}, {0, 0}}),
        from_integers({{1, 0}, {1, 0}}),
        std::move(basis),
        render({{{1, 2}, {1, 2}}, {{1, 2}, {-1, 2}}}),
        "<+|0> = 1/sqrt2, <+|y+-> = (1 +- i)/2, <y+-|0> = 1/sqrt2; p = ((1+i)/2, (1-i)/2), Arg = +-pi/4.",
    });
}

std::vector<std::string> scenario_names() {
    return {"three-box", "hardy", "mub-qubit"};
}

Scenario by_name(std::string_view name) {
    if (name == "three-box") {
        return three_box();
    }
    if (name == "hardy") {
        return hardy();
    }
    if (name == "mub-qubit") {
        return mub_qubit_phase();
    }
    std::string known;
    for (const auto &n : scenario_names()) {
        known += (known.empty() ? "" : ", ") + n;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown scenario '" + std::string(name) + "'; available: " + known);
}

bool VerificationReport::all_pass() const {
    if (!sum_pass) {
        return false;
    }
    for (const auto &e : entries) {
        if (!e.pass()) {
            return false;
        }
    }
    return true;
}

VerificationReport verify(const Scenario &scenario, double coupling) {
    VerificationReport report;
    report.scenario = scenario.name;
    report.coupling = coupling;
    report.expected_sum = Complex(0.0);
    for (Complex w : scenario.expected_weak_values) {
        report.expected_sum += w;
    }
    report.sum_pass = std::abs(report.expected_sum - 1.0) <= report.formula_tolerance;

    const DensityOperator rho = density_from_pure(scenario.pre_state);
    weaksim::MeterConfig cfg{coupling, weaksim::MeterMode::Exact};
    for (std::size_t i = 0; i < scenario.measured_basis.dim(); ++i) {
        EntryCheck e;
        e.label = scenario.measured_basis.label(i);
        e.expected = i < scenario.expected_weak_values.size() ? scenario.expected_weak_values[i] : Complex(0.0);
        e.formula = kdq::conditional_weak_value(scenario.pre_state, scenario.post_state,
                                                scenario.measured_basis.vector(i));
        e.simulated =
            weaksim::estimate_weak_value(rho, i, scenario.measured_basis, scenario.post_state, cfg).value;
        e.formula_deviation = std::abs(e.formula - e.expected);
        e.simulation_deviation = std::abs(e.simulated - e.expected);
        e.formula_pass = e.formula_deviation <= report.formula_tolerance;
        e.simulation_pass = e.simulation_deviation <= report.simulation_tolerance;
        report.entries.push_back(std::move(e));
    }
    return report;
}

}  // namespace kdcalc::scenarios
