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

#include "kdcalc/cli.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kdcalc/io.hpp"
#include "kdcalc/kdq.hpp"
#include "kdcalc/random.hpp"
#include "kdcalc/scenarios.hpp"
#include "kdcalc/weaksim.hpp"

namespace kdcalc::cli {

using nlohmann::json;

namespace {

struct GlobalOptions {
    double hbar = 1.0;
    std::optional<std::uint64_t> seed;
    double tolerance_overlap = default_tolerances().overlap_floor;
    std::string out = "json";
    bool selftest = false;

    Tolerances tolerances() const {
        Tolerances tol;
        tol.overlap_floor = tolerance_overlap;
        return tol;
    }
};

json tolerances_json(const Tolerances &t) {
    return {
        {"normalization", t.normalization},
        {"hermiticity", t.hermiticity},
        {"trace", t.trace},
        {"min_eigenvalue", t.min_eigenvalue},
        {"orthonormality", t.orthonormality},
        {"kd_normalization", t.kd_normalization},
        {"marginal_imaginary", t.marginal_imaginary},
        {"overlap_floor", t.overlap_floor},
        {"conditioning_warning", t.conditioning_warning},
        {"magnitude_floor", t.magnitude_floor},
        {"kernel_completeness", t.kernel_completeness},
        {"prediction", t.prediction},
        {"postselect_floor", t.postselect_floor},
        {"postselect_min", t.postselect_min},
    };
}

json real_vector(const std::vector<double> &v) {
    json out = json::array();
    for (double x : v) {
        out.push_back(x + 0.0);
    }
    return out;
}

std::string csv_number(double x) {
    std::ostringstream s;
    s.precision(17);
    s << x + 0.0;
    return s.str();
}

/// Long-format CSV: one row per entry, labels then re, im.
class CsvTable {
   public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    }
    void add(std::vector<std::string> labels, std::optional<Complex> z) {
        if (z) {
            labels.push_back(csv_number(z->real()));
            labels.push_back(csv_number(z->imag()));
        } else {
            labels.emplace_back();
            labels.emplace_back();
        }
        rows_.push_back(std::move(labels));
    }
    void write(std::ostream &out) const {
        write_row(out, header_);
        for (const auto &r : rows_) {
            write_row(out, r);
        }
    }

   private:
    static void write_row(std::ostream &out, const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "," : "") << cells[i];
        }
        out << "\n";
    }
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Result envelope written to stdout.
class Envelope {
   public:
    Envelope(std::string command, const std::vector<std::string> &argv, const GlobalOptions &g) {
        doc_["command"] = std::move(command);
        doc_["argv"] = argv;
        doc_["schema_version"] = io::kSchemaVersion;
        doc_["version"] = kVersion;
        doc_["seed"] = g.seed ? json(*g.seed) : json(nullptr);
        doc_["tolerances"] = tolerances_json(g.tolerances());
        doc_["inputs"] = json::object();
        doc_["payload"] = json::object();
        doc_["warnings"] = json::array();
    }

    void input(const std::string &role, const std::string &path, const std::string &digest) {
        doc_["inputs"][role] = {{"path", path}, {"fnv1a64", digest}};
    }
    void seed(std::uint64_t s) {
        doc_["seed"] = s;
    }
    void warn(const std::string &message) {
        doc_["warnings"].push_back(message);
    }
    json &payload() {
        return doc_["payload"];
    }
    const json &warnings() const {
        return doc_["warnings"];
    }
    void write(std::ostream &out) const {
        out << doc_.dump(2) << "\n";
    }

   private:
    json doc_;
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch:
        case ErrorKind::BasisTagMismatch:
            return kDimensionMismatch;
        case ErrorKind::OverlapTooSmall:
        case ErrorKind::ImaginaryLeak:
        case ErrorKind::UndefinedCells:
        case ErrorKind::ZeroWeakValue:
        case ErrorKind::PostselectionImpossible:
        case ErrorKind::InvalidState:
        case ErrorKind::InvalidDistribution:
            return kDomainError;
        case ErrorKind::NotNormalized:
        case ErrorKind::NotOrthonormal:
        case ErrorKind::DuplicateLabel:
        case ErrorKind::InvalidArgument:
        case ErrorKind::ShotBudgetZero:
        case ErrorKind::ParseError:
            return kInputError;
    }
    return kInputError;
}

int report_error(std::ostream &err, std::string_view kind, const std::string &message, int code) {
    err << json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump() << "\n";
    return code;
}

void flush_warnings(const Envelope &env, std::ostream &err) {
    for (const auto &w : env.warnings()) {
        err << json{{"warning", w}}.dump() << "\n";
    }
}

json labels_json(const OrthonormalBasis &b) {
    return b.labels();
}

// ---------------------------------------------------------------------------

struct KdArgs {
    std::string state, basis_a, basis_b;
};

int cmd_kd(const KdArgs &a, const GlobalOptions &g, const std::vector<std::string> &argv, std::ostream &out) {
    Tolerances tol = g.tolerances();
    auto state = io::load_state(a.state, tol);
    auto ba = io::load_basis(a.basis_a, tol);
    auto bb = io::load_basis(a.basis_b, tol);

    auto kd = kdq::kd_distribution(state.density, ba.basis, bb.basis);
    auto marg = kdq::marginals(kd, tol);

    if (g.out == "csv") {
        CsvTable t({"a_label", "b_label", "re", "im"});
        for (std::size_t j = 0; j < kd.dim(); ++j) {
            for (std::size_t k = 0; k < kd.dim(); ++k) {
                t.add({ba.basis.label(j), bb.basis.label(k)}, kd(j, k));
            }
        }
        t.write(out);
        return kOk;
    }

    Envelope env("kd", argv, g);
    env.input("state", a.state, state.digest);
    env.input("basis_a", a.basis_a, ba.digest);
    env.input("basis_b", a.basis_b, bb.digest);
    json &p = env.payload();
    p["basis_a_id"] = kd.basis_a_id();
    p["basis_b_id"] = kd.basis_b_id();
    p["labels_a"] = labels_json(ba.basis);
    p["labels_b"] = labels_json(bb.basis);
    p["kd"] = io::to_json(kd.values());
    p["marginal_a"] = real_vector(marg.over_a);
    p["marginal_b"] = real_vector(marg.over_b);
    p["normalization"] = io::to_json(kd.total());
    env.write(out);
    return kOk;
}

struct ReconstructArgs {
    std::string kd, basis_a, basis_b;
};

int cmd_reconstruct(const ReconstructArgs &a, const GlobalOptions &g, const std::vector<std::string> &argv,
                    std::ostream &out, std::ostream &err) {
    Tolerances tol = g.tolerances();
    auto kd = io::load_kd(a.kd);
    auto ba = io::load_basis(a.basis_a, tol);
    auto bb = io::load_basis(a.basis_b, tol);

    auto rec = kdq::reconstruct_density(kd.kd, ba.basis, bb.basis, tol);

    Envelope env("reconstruct", argv, g);
    env.input("kd", a.kd, kd.digest);
    env.input("basis_a", a.basis_a, ba.digest);
    env.input("basis_b", a.basis_b, bb.digest);
    for (const auto &w : rec.warnings) {
        env.warn(w);
    }
    if (rec.hermiticity_deviation > tol.hermiticity) {
        std::ostringstream msg;
        msg << "raw reconstruction deviates from Hermitian by " << rec.hermiticity_deviation
            << " before symmetrization";
        env.warn(msg.str());
    }
    flush_warnings(env, err);

    const CMatrix &rho = rec.density.matrix();
    if (g.out == "csv") {
        CsvTable t({"row", "col", "re", "im"});
        for (Eigen::Index j = 0; j < rho.rows(); ++j) {
            for (Eigen::Index k = 0; k < rho.cols(); ++k) {
                t.add({std::to_string(j), std::to_string(k)}, rho(j, k));
            }
        }
        t.write(out);
        return kOk;
    }
    json &p = env.payload();
    p["density"] = io::to_json(rho);
    p["hermiticity_deviation"] = rec.hermiticity_deviation;
    p["min_overlap"] = rec.min_overlap;
    p["basis_a_id"] = kd.kd.basis_a_id();
    p["basis_b_id"] = kd.kd.basis_b_id();
    env.write(out);
    return kOk;
}

struct PredictArgs {
    std::string state, basis_a, basis_b, basis_m;
    std::size_t dim = 3;
};

int cmd_predict(const PredictArgs &a, const GlobalOptions &g, const std::vector<std::string> &argv,
                std::ostream &out) {
    Tolerances tol = g.tolerances();
    Envelope env("predict", argv, g);

    std::optional<DensityOperator> rho;
    std::optional<OrthonormalBasis> ba, bb, bm;
    if (g.selftest) {
        if (a.dim < 1) {
            throw Error(ErrorKind::InvalidArgument, "--dim must be >= 1");
        }
        std::uint64_t seed = g.seed.value_or(0);
        env.seed(seed);
        rho = random_density(a.dim, a.dim, derive_seed(seed, 0, 0));
        ba = haar_random_basis(a.dim, derive_seed(seed, 1, 0));
        bb = haar_random_basis(a.dim, derive_seed(seed, 2, 0));
        bm = haar_random_basis(a.dim, derive_seed(seed, 3, 0));
    } else {
        if (a.state.empty() || a.basis_a.empty() || a.basis_b.empty() || a.basis_m.empty()) {
            throw Error(ErrorKind::InvalidArgument, "predict needs STATE BASIS_A BASIS_B BASIS_M (or --selftest)");
        }
        auto s = io::load_state(a.state, tol);
        auto la = io::load_basis(a.basis_a, tol);
        auto lb = io::load_basis(a.basis_b, tol);
        auto lm = io::load_basis(a.basis_m, tol);
        env.input("state", a.state, s.digest);
        env.input("basis_a", a.basis_a, la.digest);
        env.input("basis_b", a.basis_b, lb.digest);
        env.input("basis_m", a.basis_m, lm.digest);
        rho = std::move(s.density);
        ba = std::move(la.basis);
        bb = std::move(lb.basis);
        bm = std::move(lm.basis);
    }

    auto kd = kdq::kd_distribution(*rho, *ba, *bb);
    auto kernel = kdq::conditional_kernel(*ba, *bb, *bm, tol);
    auto predicted = kdq::predict_probabilities(kd, kernel, tol);
    std::vector<double> born;
    double max_dev = 0.0;
    for (std::size_t m = 0; m < bm->dim(); ++m) {
        born.push_back(rho->probability(bm->vector(m)));
        max_dev = std::max(max_dev, std::abs(born.back() - predicted[m]));
    }

    if (g.out == "csv") {
        CsvTable t({"m_label", "re", "im"});
        for (std::size_t m = 0; m < predicted.size(); ++m) {
            t.add({bm->label(m)}, Complex(predicted[m], 0.0));
        }
        t.write(out);
    } else {
        json &p = env.payload();
        p["labels_m"] = labels_json(*bm);
        p["probabilities"] = real_vector(predicted);
        p["born"] = real_vector(born);
        p["max_deviation"] = max_dev;
        p["basis_a_id"] = ba->id();
        p["basis_b_id"] = bb->id();
        p["basis_m_id"] = bm->id();
        if (g.selftest) {
            p["selftest"] = {{"dim", a.dim}, {"tolerance", tol.prediction}, {"pass", max_dev < tol.prediction}};
        }
        env.write(out);
    }
    if (g.selftest && !(max_dev < tol.prediction)) {
        return kCheckFailed;
    }
    return kOk;
}

struct WeakValueArgs {
    std::string pre, post, measured;
};

StateVector require_pure(const io::LoadedState &s, const std::string &path) {
    if (!s.pure) {
        throw io::InputError(ErrorKind::ParseError, path, "kind", "weak value inputs must be pure states");
    }
    return *s.pure;
}

int cmd_weakvalue(const WeakValueArgs &a, const GlobalOptions &g, const std::vector<std::string> &argv,
                  std::ostream &out, std::ostream &err) {
    if (g.out == "csv") {
        throw Error(ErrorKind::InvalidArgument, "weakvalue has a scalar payload; csv output is not available");
    }
    Tolerances tol = g.tolerances();
    auto pre = io::load_state(a.pre, tol);
    auto post = io::load_state(a.post, tol);
    auto meas = io::load_state(a.measured, tol);
    StateVector va = require_pure(pre, a.pre);
    StateVector vb = require_pure(post, a.post);
    StateVector vm = require_pure(meas, a.measured);

    Complex w = kdq::conditional_weak_value(va, vb, vm, tol);

    Envelope env("weakvalue", argv, g);
    env.input("pre", a.pre, pre.digest);
    env.input("post", a.post, post.digest);
    env.input("measured", a.measured, meas.digest);
    json &p = env.payload();
    p["value"] = io::to_json(w);
    p["magnitude"] = std::abs(w);
    p["hbar"] = g.hbar;
    try {
        auto s = kdq::action_phase(va, vb, vm, g.hbar, tol);
        p["action_phase"] = s.value;
        p["phase_radians"] = s.radians();
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::ZeroWeakValue) {
            throw;
        }
        p["action_phase"] = nullptr;
        p["phase_radians"] = nullptr;
        env.write(out);
        return report_error(err, to_string(e.kind()), e.what(), kDomainError);
    }
    env.write(out);
    return kOk;
}

struct SimulateArgs {
    std::string state, basis_a, basis_b;
    double coupling = 0.01;
    std::string mode = "exact";
    std::uint64_t shots = 10000;
};

int cmd_simulate(const SimulateArgs &a, const GlobalOptions &g, const std::vector<std::string> &argv,
                 std::ostream &out, std::ostream &err) {
    Tolerances tol = g.tolerances();
    weaksim::MeterConfig cfg{a.coupling, a.mode == "sampled" ? weaksim::MeterMode::Sampled : weaksim::MeterMode::Exact,
                             a.shots, g.seed.value_or(0)};
    cfg.validate();
    if (a.shots < 2) {
        throw Error(ErrorKind::ShotBudgetZero, "--shots must be at least 2, got " + std::to_string(a.shots));
    }

    auto state = io::load_state(a.state, tol);
    auto ba = io::load_basis(a.basis_a, tol);
    auto bb = io::load_basis(a.basis_b, tol);
    auto exact = kdq::kd_distribution(state.density, ba.basis, bb.basis);
    auto est = weaksim::estimate_kd(state.density, ba.basis, bb.basis, cfg, tol);

    Envelope env("simulate", argv, g);
    env.seed(cfg.seed);
    env.input("state", a.state, state.digest);
    env.input("basis_a", a.basis_a, ba.digest);
    env.input("basis_b", a.basis_b, bb.digest);

    const std::size_t d = est.dim();
    json values = json::array();
    json errors = json::array();
    json deviations = json::array();
    double max_dev = 0.0;
    CsvTable t({"a_label", "b_label", "re", "im"});
    for (std::size_t j = 0; j < d; ++j) {
        json vrow = json::array();
        json erow = json::array();
        json drow = json::array();
        for (std::size_t k = 0; k < d; ++k) {
            auto jj = static_cast<Eigen::Index>(j);
            auto kk = static_cast<Eigen::Index>(k);
            if (!est.postselectable(jj, kk)) {
                env.warn("PostselectionImpossible: cell (a=" + ba.basis.label(j) + ", b=" + bb.basis.label(k) +
                         ") has <b|rho|b> below " + csv_number(tol.postselect_min) + "; reported null");
                vrow.push_back(nullptr);
                erow.push_back(nullptr);
                drow.push_back(nullptr);
                t.add({ba.basis.label(j), bb.basis.label(k)}, std::nullopt);
                continue;
            }
            Complex v = est.values(jj, kk);
            double dev = std::abs(v - exact(j, k));
            max_dev = std::max(max_dev, dev);
            vrow.push_back(io::to_json(v));
            erow.push_back(est.std_errors(jj, kk));
            drow.push_back(dev);
            t.add({ba.basis.label(j), bb.basis.label(k)}, v);
        }
        values.push_back(std::move(vrow));
        errors.push_back(std::move(erow));
        deviations.push_back(std::move(drow));
    }
    flush_warnings(env, err);
    if (g.out == "csv") {
        t.write(out);
        return kOk;
    }
    json &p = env.payload();
    p["basis_a_id"] = est.basis_a_id;
    p["basis_b_id"] = est.basis_b_id;
    p["labels_a"] = labels_json(ba.basis);
    p["labels_b"] = labels_json(bb.basis);
    p["coupling"] = cfg.coupling;
    p["mode"] = a.mode;
    p["shots"] = cfg.mode == weaksim::MeterMode::Sampled ? json(cfg.shots) : json(nullptr);
    p["estimate"] = std::move(values);
    p["std_errors"] = std::move(errors);
    p["exact"] = io::to_json(exact.values());
    p["deviations"] = std::move(deviations);
    p["max_deviation"] = max_dev;
    env.write(out);
    return kOk;
}

struct ScenarioArgs {
    std::string name;
    double coupling = 0.01;
};

int cmd_scenario(const ScenarioArgs &a, const GlobalOptions &g, const std::vector<std::string> &argv,
                 std::ostream &out) {
    if (g.out == "csv") {
        throw Error(ErrorKind::InvalidArgument, "scenario produces a report; csv output is not available");
    }
    auto sc = scenarios::by_name(a.name);
    weaksim::MeterConfig{a.coupling}.validate();
    auto report = scenarios::verify(sc, a.coupling);

    Envelope env("scenario", argv, g);
    json &p = env.payload();
    p["name"] = sc.name;
    p["dim"] = sc.dim;
    p["provenance"] = sc.provenance_note;
    p["coupling"] = report.coupling;
    p["formula_tolerance"] = report.formula_tolerance;
    p["simulation_tolerance"] = report.simulation_tolerance;
    p["expected_sum"] = io::to_json(report.expected_sum);
    json expected = json::array();
    for (Complex w : sc.expected_weak_values) {
        expected.push_back(io::to_json(w));
    }
    p["expected_weak_values"] = std::move(expected);
    json entries = json::array();
    for (const auto &e : report.entries) {
        entries.push_back({{"label", e.label},
                           {"expected", io::to_json(e.expected)},
                           {"formula", io::to_json(e.formula)},
                           {"simulated", io::to_json(e.simulated)},
                           {"formula_deviation", e.formula_deviation},
                           {"simulation_deviation", e.simulation_deviation},
                           {"pass", e.pass()}});
    }
    p["entries"] = std::move(entries);
    p["pass"] = report.all_pass();
    env.write(out);
    return report.all_pass() ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Kirkwood-Dirac quasiprobabilities, weak values and weak-measurement simulation"};
    app.name("kdcalc");
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--hbar", g.hbar, "Reduced Planck constant for action phases")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "Seed for random generation");
    app.add_option("--tolerance-overlap", g.tolerance_overlap, "Division guard on |<b|a>|")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--selftest", g.selftest, "Run predict on seeded random inputs");

    KdArgs kd;
    auto *kd_cmd = app.add_subcommand("kd", "Kirkwood-Dirac distribution of a state over two bases");
    kd_cmd->add_option("state", kd.state)->required();
    kd_cmd->add_option("basis_a", kd.basis_a)->required();
    kd_cmd->add_option("basis_b", kd.basis_b)->required();

    ReconstructArgs rec;
    auto *rec_cmd = app.add_subcommand("reconstruct", "Density operator from a distribution and its bases");
    rec_cmd->add_option("kd", rec.kd)->required();
    rec_cmd->add_option("basis_a", rec.basis_a)->required();
    rec_cmd->add_option("basis_b", rec.basis_b)->required();

    PredictArgs pred;
    auto *pred_cmd = app.add_subcommand("predict", "Outcome probabilities in a third basis via the complex Bayes rule");
    pred_cmd->add_option("state", pred.state);
    pred_cmd->add_option("basis_a", pred.basis_a);
    pred_cmd->add_option("basis_b", pred.basis_b);
    pred_cmd->add_option("basis_m", pred.basis_m);
    pred_cmd->add_option("--dim", pred.dim, "Dimension for --selftest");

    WeakValueArgs wv;
    auto *wv_cmd = app.add_subcommand("weakvalue", "Conditional weak value p(m|a,b) and its action phase");
    wv_cmd->add_option("pre", wv.pre)->required();
    wv_cmd->add_option("post", wv.post)->required();
    wv_cmd->add_option("measured", wv.measured)->required();

    SimulateArgs sim;
    auto *sim_cmd = app.add_subcommand("simulate", "Estimate the distribution with a simulated weak measurement");
    sim_cmd->add_option("state", sim.state)->required();
    sim_cmd->add_option("basis_a", sim.basis_a)->required();
    sim_cmd->add_option("basis_b", sim.basis_b)->required();
    sim_cmd->add_option("--coupling", sim.coupling, "Meter rotation angle g");
    sim_cmd->add_option("--mode", sim.mode)->check(CLI::IsMember({"exact", "sampled"}));
    sim_cmd->add_option("--shots", sim.shots, "Meter readouts per cell (sampled mode)");

    ScenarioArgs scen;
    auto *scen_cmd = app.add_subcommand("scenario", "Verify a built-in pre/post-selection scenario");
    scen_cmd->add_option("name", scen.name)->required();
    scen_cmd->add_option("--coupling", scen.coupling, "Meter rotation angle g");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion &e) {
        out << kVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError &e) {
        return report_error(err, "ParseError", e.what(), kInputError);
    }

    try {
        if (g.selftest && !pred_cmd->parsed()) {
            throw Error(ErrorKind::InvalidArgument, "--selftest is only supported by predict");
        }
        if (kd_cmd->parsed()) {
            return cmd_kd(kd, g, args, out);
        }
        if (rec_cmd->parsed()) {
            return cmd_reconstruct(rec, g, args, out, err);
        }
        if (pred_cmd->parsed()) {
            return cmd_predict(pred, g, args, out);
        }
        if (wv_cmd->parsed()) {
            return cmd_weakvalue(wv, g, args, out, err);
        }
        if (sim_cmd->parsed()) {
            return cmd_simulate(sim, g, args, out, err);
        }
        if (scen_cmd->parsed()) {
            return cmd_scenario(scen, g, args, out);
        }
    } catch (const io::InputError &e) {
        return report_error(err, to_string(e.kind()), e.what(), kInputError);
    } catch (const Error &e) {
        return report_error(err, to_string(e.kind()), e.what(), exit_code_for(e.kind()));
    }
    return report_error(err, "ParseError", "no subcommand given", kInputError);
}

}  // namespace kdcalc::cli
