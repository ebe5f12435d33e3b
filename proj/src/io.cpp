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

#include "kdcalc/io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <sstream>

namespace kdcalc::io {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(ErrorKind::ParseError, path.string(), "<file>", "cannot open file");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json parse_document(const std::filesystem::path &path, const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw InputError(ErrorKind::ParseError, path.string(), "<document>", e.what());
    }
}

/// Field accessor that reports the file and field on every failure.
class Reader {
   public:
    Reader(const std::filesystem::path &path, const json &doc) : file_(path.string()), doc_(doc) {
        if (!doc_.is_object()) {
            fail("<document>", "top level must be an object");
        }
    }

    [[noreturn]] void fail(const std::string &field, const std::string &message,
                           ErrorKind kind = ErrorKind::ParseError) const {
        throw InputError(kind, file_, field, message);
    }

    const json &require(const std::string &field) const {
        auto it = doc_.find(field);
        if (it == doc_.end()) {
            fail(field, "missing");
        }
        return *it;
    }

    void require_schema() const {
        const json &v = require("schema_version");
        if (!v.is_string() || v.get<std::string>() != kSchemaVersion) {
            fail("schema_version", std::string("expected \"") + kSchemaVersion + "\"");
        }
    }

    std::size_t dim() const {
        const json &v = require("dim");
        if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
            fail("dim", "must be a positive integer");
        }
        return static_cast<std::size_t>(v.get<std::int64_t>());
    }

    Complex complex_at(const json &v, const std::string &field) const {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            fail(field, "complex entries must be [re, im] number pairs");
        }
        Complex z(v[0].get<double>(), v[1].get<double>());
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            fail(field, "non-finite entry");
        }
        return z;
    }

    CVector vector_at(const json &v, std::size_t dim, const std::string &field) const {
        if (!v.is_array() || v.size() != dim) {
            fail(field, "expected " + std::to_string(dim) + " entries");
        }
        CVector out(static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < dim; ++i) {
            out(static_cast<Eigen::Index>(i)) = complex_at(v[i], field + "[" + std::to_string(i) + "]");
        }
        return out;
    }

    CMatrix matrix_at(const json &v, std::size_t dim, const std::string &field) const {
        if (!v.is_array() || v.size() != dim) {
            fail(field, "expected " + std::to_string(dim) + " rows");
        }
        CMatrix out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t r = 0; r < dim; ++r) {
            out.row(static_cast<Eigen::Index>(r)) =
                vector_at(v[r], dim, field + "[" + std::to_string(r) + "]").transpose();
        }
        return out;
    }

    std::string optional_string(const std::string &field) const {
        auto it = doc_.find(field);
        if (it == doc_.end() || it->is_null()) {
            return {};
        }
        if (!it->is_string()) {
            fail(field, "must be a string");
        }
        return it->get<std::string>();
    }

    const std::string &file() const {
        return file_;
    }

   private:
    std::string file_;
    const json &doc_;
};

}  // namespace

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << h;
    return out.str();
}

LoadedState load_state(const std::filesystem::path &path, const Tolerances &tol) {
    std::string text = read_file(path);
    json doc = parse_document(path, text);
    Reader r(path, doc);
    r.require_schema();
    std::size_t dim = r.dim();
    std::string kind = r.require("kind").is_string() ? r.require("kind").get<std::string>() : "";
    std::string label = r.optional_string("label");

    if (kind == "pure") {
        CVector amps = r.vector_at(r.require("amplitudes"), dim, "amplitudes");
        try {
            StateVector psi = StateVector::from_amplitudes(std::move(amps), tol);
            DensityOperator rho = density_from_pure(psi);
            return {StateKind::Pure, std::move(psi), std::move(rho), std::move(label), fnv1a64_hex(text)};
        } catch (const InputError &) {
            throw;
        } catch (const Error &e) {
            r.fail("amplitudes", e.what(), e.kind());
        }
    }
    if (kind == "mixed") {
        CMatrix m = r.matrix_at(r.require("matrix"), dim, "matrix");
        try {
            DensityOperator rho = DensityOperator::from_matrix(std::move(m), tol);
            return {StateKind::Mixed, std::nullopt, std::move(rho), std::move(label), fnv1a64_hex(text)};
        } catch (const InputError &) {
            throw;
        } catch (const Error &e) {
            r.fail("matrix", e.what(), e.kind());
        }
    }
    r.fail("kind", "must be \"pure\" or \"mixed\"");
}

LoadedBasis load_basis(const std::filesystem::path &path, const Tolerances &tol) {
    std::string text = read_file(path);
    json doc = parse_document(path, text);
    Reader r(path, doc);
    r.require_schema();
    std::size_t dim = r.dim();

    const json &labels_json = r.require("labels");
    if (!labels_json.is_array() || labels_json.size() != dim) {
        r.fail("labels", "expected " + std::to_string(dim) + " labels");
    }
    std::vector<std::string> labels;
    for (const auto &l : labels_json) {
        if (!l.is_string()) {
            r.fail("labels", "labels must be strings");
        }
        labels.push_back(l.get<std::string>());
    }

    const json &vectors_json = r.require("vectors");
    if (!vectors_json.is_array() || vectors_json.size() != dim) {
        r.fail("vectors", "expected " + std::to_string(dim) + " vectors");
    }
    std::vector<StateVector> vectors;
    for (std::size_t i = 0; i < dim; ++i) {
        std::string field = "vectors[" + std::to_string(i) + "]";
        CVector v = r.vector_at(vectors_json[i], dim, field);
        try {
            vectors.push_back(StateVector::from_amplitudes(std::move(v), tol));
        } catch (const Error &e) {
            r.fail(field, e.what(), e.kind());
        }
    }

    std::string id = r.optional_string("id");
    if (id.empty()) {
        id = path.stem().string();
    }
    try {
        return {validate_basis(std::move(vectors), std::move(labels), std::move(id), tol), fnv1a64_hex(text)};
    } catch (const Error &e) {
        r.fail(e.kind() == ErrorKind::DuplicateLabel ? "labels" : "vectors", e.what(), e.kind());
    }
}

LoadedKD load_kd(const std::filesystem::path &path) {
    std::string text = read_file(path);
    json doc = parse_document(path, text);
    const json *body = &doc;
    std::string prefix;
    if (doc.is_object() && doc.contains("payload")) {
        body = &doc["payload"];
        prefix = "payload.";
    }
    Reader r(path, *body);
    const json &kd_json = r.require("kd");
    if (!kd_json.is_array() || kd_json.empty()) {
        r.fail(prefix + "kd", "must be a non-empty matrix");
    }
    CMatrix values = r.matrix_at(kd_json, kd_json.size(), prefix + "kd");
    std::string a_id = r.optional_string("basis_a_id");
    std::string b_id = r.optional_string("basis_b_id");
    try {
        return {kdq::KDDistribution::from_values(std::move(values), std::move(a_id), std::move(b_id)),
                fnv1a64_hex(text)};
    } catch (const Error &e) {
        r.fail(prefix + "kd", e.what(), e.kind());
    }
}

json to_json(Complex z) {
    // Adding +0.0 turns -0.0 into +0.0 and leaves every other value unchanged.
    return json::array({z.real() + 0.0, z.imag() + 0.0});
}

json to_json(const CMatrix &m) {
    json rows = json::array();
    for (Eigen::Index j = 0; j < m.rows(); ++j) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            row.push_back(to_json(m(j, k)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Complex complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error(ErrorKind::ParseError, "complex entries must be [re, im] number pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace kdcalc::io
