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

// In-process driver for the command line, shared by the CLI unit tests and
// the acceptance suite. Commands run with the fixtures directory as the
// working directory so that echoed paths are stable.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "kdcalc/cli.hpp"

namespace harness {

inline std::filesystem::path tests_dir() {
    return KDCALC_TESTS_DIR;
}

inline std::filesystem::path fixtures_dir() {
    return tests_dir() / "fixtures";
}

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

class ScopedCwd {
   public:
    explicit ScopedCwd(const std::filesystem::path &dir) : saved_(std::filesystem::current_path()) {
        std::filesystem::current_path(dir);
    }
    ~ScopedCwd() {
        std::filesystem::current_path(saved_);
    }
    ScopedCwd(const ScopedCwd &) = delete;
    ScopedCwd &operator=(const ScopedCwd &) = delete;

   private:
    std::filesystem::path saved_;
};

inline CliRun run_cli(const std::vector<std::string> &args) {
    ScopedCwd cwd(fixtures_dir());
    std::ostringstream out;
    std::ostringstream err;
    int code = kdcalc::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

inline std::string read_text(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_text(const std::filesystem::path &p, const std::string &text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

/// Blanks the tool version so goldens survive version bumps.
inline std::string strip_version(const std::string &text) {
    static const std::regex version(R"("version": "[^"]*")");
    return std::regex_replace(text, version, R"("version": "<any>")");
}

struct GoldenCase {
    std::string golden;
    std::vector<std::string> args;
    int expected_exit = 0;
};

inline std::vector<GoldenCase> golden_cases() {
    return {
        {"kd_zero_z_x.json", {"kd", "zero.json", "basis_z.json", "basis_x.json"}},
        {"kd_zero_z_x.csv", {"--out", "csv", "kd", "zero.json", "basis_z.json", "basis_x.json"}},
        {"kd_mixed_z_y.json", {"kd", "mixed.json", "basis_z.json", "basis_y.json"}},
        {"reconstruct_zero_z_x.json", {"reconstruct", "../golden/kd_zero_z_x.json", "basis_z.json", "basis_x.json"}},
        {"reconstruct_mixed_z_y.json",
         {"reconstruct", "../golden/kd_mixed_z_y.json", "basis_z.json", "basis_y.json"}},
        {"scenario_three_box.json", {"scenario", "three-box"}},
        {"scenario_hardy.json", {"scenario", "hardy"}},
        {"scenario_mub_qubit.json", {"scenario", "mub-qubit"}},
    };
}

struct GoldenResult {
    bool pass = false;
    std::string detail;
};

/// Runs the case and compares stdout byte for byte (version field aside).
/// With KDCALC_UPDATE_GOLDEN set the golden file is rewritten instead.
inline GoldenResult check_golden(const GoldenCase &c) {
    auto path = tests_dir() / "golden" / c.golden;
    CliRun r = run_cli(c.args);
    if (r.code != c.expected_exit) {
        return {false, c.golden + ": exit " + std::to_string(r.code) + ", stderr: " + r.err};
    }
    if (std::getenv("KDCALC_UPDATE_GOLDEN") != nullptr) {
        write_text(path, r.out);
        return {true, c.golden + ": updated"};
    }
    if (!std::filesystem::exists(path)) {
        return {false, c.golden + ": golden file missing"};
    }
    if (strip_version(read_text(path)) != strip_version(r.out)) {
        return {false, c.golden + ": output differs from golden"};
    }
    return {true, c.golden};
}

}  // namespace harness
