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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "kdcalc/kdq.hpp"
#include "kdcalc/linalg.hpp"

/// JSON state, basis and distribution files (schema_version "1").
namespace kdcalc::io {

inline constexpr const char *kSchemaVersion = "1";

/// A file failed to parse or to satisfy the invariants of what it encodes.
class InputError : public Error {
   public:
    InputError(ErrorKind kind, const std::string &file, const std::string &field, const std::string &message)
        : Error(kind, file + ": field '" + field + "': " + message), file_(file), field_(field) {
    }
    const std::string &file() const {
        return file_;
    }
    const std::string &field() const {
        return field_;
    }

   private:
    std::string file_;
    std::string field_;
};

enum class StateKind { Pure, Mixed };

struct LoadedState {
    StateKind kind = StateKind::Pure;
    std::optional<StateVector> pure;
    DensityOperator density;
    std::string label;
    std::string digest;
};

struct LoadedBasis {
    OrthonormalBasis basis;
    std::string digest;
};

struct LoadedKD {
    kdq::KDDistribution kd;
    std::string digest;
};

/// FNV-1a 64-bit hash of the bytes, as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

LoadedState load_state(const std::filesystem::path &path, const Tolerances &tol = default_tolerances());
/// The basis id is the file's "id" field, or its stem when absent.
LoadedBasis load_basis(const std::filesystem::path &path, const Tolerances &tol = default_tolerances());
/// Accepts a `kd` command envelope or a bare {"basis_a_id", "basis_b_id", "kd"} object.
LoadedKD load_kd(const std::filesystem::path &path);

/// [re, im], with negative zero written as 0.
nlohmann::json to_json(Complex z);
nlohmann::json to_json(const CMatrix &m);
Complex complex_from_json(const nlohmann::json &j);

}  // namespace kdcalc::io
