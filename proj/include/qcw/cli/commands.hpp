// Copyright 2026 the qcw authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#if __has_include(<sys/resource.h>)
#include <sys/resource.h>
#define QCW_HAS_RUSAGE 1
#endif

#include "qcw/cli/argparse.hpp"
#include "qcw/cli/session.hpp"
#include "qcw/device/router.hpp"
#include "qcw/qcir/optimize.hpp"
#include "qcw/qcir/qasm.hpp"
#include "qcw/tableau/passes.hpp"
#include "qcw/tableau/phase_poly.hpp"
#include "qcw/zx/extract.hpp"
#include "qcw/zx/simplify.hpp"
#include "qcw/zx/to_tensor.hpp"

namespace qcw::cli {

/**
 * @brief A node of the command tree: parser, action, optional subcommands.
 *
 * Group nodes (no action) print their manual when invoked bare.
 */
struct Command {
    std::string name;
    std::string description;
    ArgumentParser parser;
    std::map<std::string, Command> sub;
    std::function<int(ParsedArgs const&, Session&)> action;
};

using CommandMap = std::map<std::string, Command>;

/// Resolves a token at one tree level: exact match first, then unique prefix.
inline Command const& resolve_token(CommandMap const& level, std::string const& token,
                                    std::string const& context) {
    auto exact = level.find(token);
    if (exact != level.end()) return exact->second;
    std::vector<std::string> matches;
    for (auto const& [name, cmd] : level)
        if (name.rfind(token, 0) == 0) matches.push_back(name);
    if (matches.size() == 1) return level.at(matches.front());
    if (matches.empty()) throw parse_error(fmt::format("unknown command '{}'{}", token, context));
    throw parse_error(
        fmt::format("ambiguous command '{}' (matches: {})", token, fmt::join(matches, ", ")));
}

namespace detail {

inline int fail(Session& s, std::string const& message) {
    *s.err << "error: " << message << "\n";
    return 1;
}

inline std::optional<size_t> checked_id(Session& s, ParsedArgs const& args, std::string const& key) {
    int64_t raw = args.integer(key);
    if (raw < 0) {
        fail(s, fmt::format("invalid id '{}'", raw));
        return std::nullopt;
    }
    return static_cast<size_t>(raw);
}

inline std::string circuit_summary(qcir::QuantumCircuit const& c) {
    return fmt::format("{} qubits, {} gates", c.n_qubits(), c.size());
}
inline std::string diagram_summary(zx::ZXDiagram const& g) {
    auto st = g.stats();
    return fmt::format("{} vertices, {} edges", st.n_vertices, st.n_edges);
}
inline std::string tableau_summary(tableau::Tableau const& t) {
    return fmt::format("{} qubits, {} elements, {} rotations", t.num_qubits(), t.size(),
                       t.rotation_count());
}
inline std::string device_summary(device::Device const& d) {
    return fmt::format("'{}', {} qubits, {} edges", d.name(), d.n_physical(), d.edges().size());
}
inline std::string unitary_summary(tensor::Unitary const& u) {
    return fmt::format("{}x{} matrix", u.rows(), u.cols());
}

/// Registers list/checkout/delete for one snapshot manager.
template <typename T, typename Summarize>
void add_manager_verbs(Command& group, std::string const& noun,
                       SnapshotManager<T> Session::*member, Summarize summarize) {
    Command list;
    list.name = "list";
    list.description = fmt::format("list all stored {}s; '*' marks the focused one", noun);
    list.action = [member, summarize, noun](ParsedArgs const&, Session& s) {
        auto& mgr = s.*member;
        if (mgr.empty()) {
            *s.out << fmt::format("no {}s\n", noun);
            return 0;
        }
        for (auto const& [id, obj] : mgr.entries()) {
            bool focus = mgr.focused_id() && *mgr.focused_id() == id;
            *s.out << fmt::format("{} {:>3}: {}\n", focus ? "*" : " ", id, summarize(obj));
        }
        return 0;
    };
    group.sub.emplace("list", std::move(list));

    Command checkout;
    checkout.name = "checkout";
    checkout.description = fmt::format("switch focus to the {} with the given id", noun);
    checkout.parser.add_positional("id").integer().help(fmt::format("id of the {} to focus", noun));
    checkout.action = [member, noun](ParsedArgs const& args, Session& s) {
        auto id = checked_id(s, args, "id");
        if (!id) return 1;
        auto& mgr = s.*member;
        if (!mgr.has(*id)) return fail(s, fmt::format("no {} with id {}", noun, *id));
        mgr.checkout(*id);
        *s.out << fmt::format("focused {} {}\n", noun, *id);
        return 0;
    };
    group.sub.emplace("checkout", std::move(checkout));

    Command del;
    del.name = "delete";
    del.description =
        fmt::format("delete a {} (the focused one by default); focus falls back to the "
                    "highest remaining id",
                    noun);
    del.parser.add_positional("id").integer().optional().help(
        fmt::format("id of the {} to delete", noun));
    del.action = [member, noun](ParsedArgs const& args, Session& s) {
        auto& mgr = s.*member;
        size_t id = 0;
        if (args.has("id")) {
            auto parsed = checked_id(s, args, "id");
            if (!parsed) return 1;
            id = *parsed;
        } else {
            if (mgr.empty()) return fail(s, fmt::format("no {}s to delete", noun));
            id = *mgr.focused_id();
        }
        if (!mgr.has(id)) return fail(s, fmt::format("no {} with id {}", noun, id));
        mgr.remove(id);
        *s.out << fmt::format("deleted {} {}\n", noun, id);
        return 0;
    };
    group.sub.emplace("delete", std::move(del));
}

inline void print_circuit_stats(Session& s, size_t id, qcir::QuantumCircuit const& c) {
    auto st = c.statistics();
    *s.out << fmt::format("circuit {}: {} qubits, {} gates\n", id, c.n_qubits(), st.gate_count);
    *s.out << fmt::format("  t-count       : {}\n", st.t_count);
    *s.out << fmt::format("  rz-count      : {}\n", st.rz_count);
    *s.out << fmt::format("  h-count       : {}\n", st.h_count);
    *s.out << fmt::format("  2-qubit gates : {}\n", st.two_qubit_count);
    *s.out << fmt::format("  clifford gates: {}\n", st.clifford_count);
    *s.out << fmt::format("  depth         : {}\n", st.depth);
    *s.out << fmt::format("  delay         : {}\n", st.delay);
}

inline std::string format_gate(qcir::Gate const& g) {
    std::string qubits;
    for (size_t i = 0; i < g.qubits.size(); ++i)
        qubits += fmt::format("{}q[{}]", i == 0 ? "" : ", ", g.qubits[i]);
    std::string head = g.kind;
    if (!g.param.is_zero() || g.kind == "rz" || g.kind == "rx")
        head += fmt::format("({})", g.param.to_string());
    return fmt::format("{:<10} {}", head, qubits);
}

inline int equivalence_report(Session& s, qcir::QuantumCircuit const& a,
                              qcir::QuantumCircuit const& b) {
    if (a.n_qubits() != b.n_qubits()) {
        *s.out << "not equivalent (qubit counts differ)\n";
        return 1;
    }
    if (a.n_qubits() > tensor::kMaxDenseQubits)
        return fail(s, fmt::format("tensor equivalence is limited to {} qubits",
                                   tensor::kMaxDenseQubits));
    auto report = tensor::equiv_up_to_global_phase(a, b);
    *s.out << fmt::format("{} (fidelity = {:.9f})\n",
                          report.equivalent ? "equivalent" : "not equivalent", report.fidelity);
    return report.equivalent ? 0 : 1;
}

}  // namespace detail

inline Command build_qcir_commands() {
    using namespace detail;
    Command group;
    group.name = "qcir";
    group.description = "manage quantum circuit netlists";

    Command read;
    read.name = "read";
    read.description = "read a quantum circuit and construct the corresponding netlist";
    read.parser.add_positional("filepath").help(
        "the filepath to the quantum circuit file. Supported extension: .qasm");
    read.parser.add_flag("-r", "--replace")
        .help("if specified, replace the current circuit; otherwise store a new one");
    read.action = [](ParsedArgs const& args, Session& s) {
        std::filesystem::path path = args.str("filepath");
        if (path.extension() != ".qasm")
            return fail(s, fmt::format("unsupported extension '{}' (expected .qasm)",
                                       path.extension().string()));
        std::ifstream in{path};
        if (!in) return fail(s, fmt::format("cannot open '{}'", path.string()));
        std::stringstream buffer;
        buffer << in.rdbuf();
        std::vector<std::string> warnings;
        qcir::QuantumCircuit circuit{0};
        try {
            circuit = qcir::parse_qasm(buffer.str(), &warnings);
        } catch (std::exception const& e) {
            return fail(s, fmt::format("'{}': {}", path.string(), e.what()));
        }
        for (auto const& w : warnings) s.log(LogLevel::warn, w);
        if (args.flag("replace")) {
            s.circuits.replace_focused(std::move(circuit));
            *s.out << fmt::format("replaced circuit {}\n", *s.circuits.focused_id());
        } else {
            size_t id = s.circuits.add(std::move(circuit));
            *s.out << fmt::format("stored circuit {}: {}\n", id,
                                  circuit_summary(s.circuits.focused()));
        }
        return 0;
    };
    group.sub.emplace("read", std::move(read));

    Command write;
    write.name = "write";
    write.description = "write the focused circuit to a .qasm file";
    write.parser.add_positional("filepath").help("output path; written in OpenQASM 2.0");
    write.action = [](ParsedArgs const& args, Session& s) {
        if (s.circuits.empty()) return fail(s, "no circuits in the workspace");
        std::ofstream out{args.str("filepath")};
        if (!out) return fail(s, fmt::format("cannot write '{}'", args.str("filepath")));
        out << qcir::write_qasm(s.circuits.focused());
        return 0;
    };
    group.sub.emplace("write", std::move(write));

    Command print;
    print.name = "print";
    print.description = "print the focused circuit's gates, or its statistics with --stat";
    print.parser.add_flag("-s", "--stat").help("print aggregate statistics instead of gates");
    print.action = [](ParsedArgs const& args, Session& s) {
        if (s.circuits.empty()) return fail(s, "no circuits in the workspace");
        size_t id = *s.circuits.focused_id();
        auto const& c = s.circuits.focused();
        if (args.flag("stat")) {
            print_circuit_stats(s, id, c);
            return 0;
        }
        *s.out << fmt::format("circuit {}: {}\n", id, circuit_summary(c));
        for (size_t i = 0; i < c.size(); ++i)
            *s.out << fmt::format("  {:>4}: {}\n", i, format_gate(c.gates()[i]));
        return 0;
    };
    group.sub.emplace("print", std::move(print));

    Command make_new;
    make_new.name = "new";
    make_new.description = "add a new empty circuit and focus it";
    make_new.parser.add_positional("n-qubits").integer().optional("1").help("number of qubits");
    make_new.action = [](ParsedArgs const& args, Session& s) {
        int64_t n = args.integer("n-qubits");
        if (n < 0) return fail(s, "qubit count must be nonnegative");
        size_t id = s.circuits.add(qcir::QuantumCircuit{static_cast<size_t>(n)});
        *s.out << fmt::format("stored circuit {}: {} qubits, 0 gates\n", id, n);
        return 0;
    };
    group.sub.emplace("new", std::move(make_new));

    Command optimize;
    optimize.name = "optimize";
    optimize.description =
        "run basic gate-level optimization (adjacent-gate cancellation and rotation fusion) "
        "on the focused circuit";
    optimize.action = [](ParsedArgs const&, Session& s) {
        if (s.circuits.empty()) return fail(s, "no circuits in the workspace");
        auto& c = s.circuits.focused();
        auto before = c.statistics();
        s.log(LogLevel::debug, fmt::format("basic optimization: cancellation and fusion sweep over {} gates",
                                           before.gate_count));
        c = qcir::basic_optimize(c);
        auto after = c.statistics();
        *s.out << fmt::format("optimized circuit {}: {} -> {} gates (t-count {} -> {})\n",
                              *s.circuits.focused_id(), before.gate_count, after.gate_count,
                              before.t_count, after.t_count);
        return 0;
    };
    group.sub.emplace("optimize", std::move(optimize));

    Command equiv;
    equiv.name = "equiv";
    equiv.description =
        "check two stored circuits for equivalence up to global phase via their unitaries";
    equiv.parser.add_positional("id-a").integer().help("first circuit id");
    equiv.parser.add_positional("id-b").integer().optional().help(
        "second circuit id (the focused circuit by default)");
    equiv.parser.add_flag("-t", "--tensor").help("use dense tensor contraction (the default method)");
    equiv.action = [](ParsedArgs const& args, Session& s) {
        auto id_a = detail::checked_id(s, args, "id-a");
        if (!id_a) return 1;
        size_t id_b = 0;
        if (args.has("id-b")) {
            auto parsed = detail::checked_id(s, args, "id-b");
            if (!parsed) return 1;
            id_b = *parsed;
        } else {
            if (s.circuits.empty()) return fail(s, "no circuits in the workspace");
            id_b = *s.circuits.focused_id();
        }
        if (!s.circuits.has(*id_a)) return fail(s, fmt::format("no circuit with id {}", *id_a));
        if (!s.circuits.has(id_b)) return fail(s, fmt::format("no circuit with id {}", id_b));
        return equivalence_report(s, s.circuits.at(*id_a), s.circuits.at(id_b));
    };
    group.sub.emplace("equiv", std::move(equiv));

    add_manager_verbs(group, "circuit", &Session::circuits, circuit_summary);
    return group;
}

inline Command build_zx_commands() {
    using namespace detail;
    Command group;
    group.name = "zx";
    group.description = "manage ZX-diagrams and run diagrammatic rewriting";

    Command optimize;
    optimize.name = "optimize";
    optimize.description =
        "fully reduce the focused ZX-diagram (spider fusion, local complementation, "
        "pivoting, and phase-gadget elimination to a reduced graph-like form)";
    optimize.parser.add_flag("-f", "--full").help("run the full reduction to a fixpoint (default)");
    optimize.action = [](ParsedArgs const&, Session& s) {
        if (s.diagrams.empty()) return fail(s, "no zx-diagrams in the workspace");
        auto& g = s.diagrams.focused();
        auto before = g.stats();
        s.log(LogLevel::debug,
              fmt::format("full reduction: rewriting {} vertices to a reduced graph-like form",
                          before.n_vertices));
        zx::full_reduce(g);
        auto after = g.stats();
        *s.out << fmt::format(
            "reduced zx-diagram {}: {} -> {} vertices, t-count {} -> {}\n",
            *s.diagrams.focused_id(), before.n_vertices, after.n_vertices, before.t_count,
            after.t_count);
        return 0;
    };
    group.sub.emplace("optimize", std::move(optimize));

    Command print;
    print.name = "print";
    print.description = "print a summary of the focused ZX-diagram, or a full breakdown with --stat";
    print.parser.add_flag("-s", "--stat").help("print the vertex and edge breakdown");
    print.action = [](ParsedArgs const& args, Session& s) {
        if (s.diagrams.empty()) return fail(s, "no zx-diagrams in the workspace");
        auto const& g = s.diagrams.focused();
        auto st = g.stats();
        *s.out << fmt::format("zx-diagram {}: {}\n", *s.diagrams.focused_id(), diagram_summary(g));
        if (args.flag("stat")) {
            *s.out << fmt::format("  z-spiders     : {}\n", st.n_z);
            *s.out << fmt::format("  x-spiders     : {}\n", st.n_x);
            *s.out << fmt::format("  boundaries    : {}\n", st.n_boundaries);
            *s.out << fmt::format("  hadamard edges: {}\n", st.n_hadamard_edges);
            *s.out << fmt::format("  t-count       : {}\n", st.t_count);
            *s.out << fmt::format("  non-clifford  : {}\n", st.non_clifford_count);
        }
        return 0;
    };
    group.sub.emplace("print", std::move(print));

    Command make_new;
    make_new.name = "new";
    make_new.description = "add a new identity ZX-diagram and focus it";
    make_new.parser.add_positional("n-qubits").integer().optional("1").help("number of open wires");
    make_new.action = [](ParsedArgs const& args, Session& s) {
        int64_t n = args.integer("n-qubits");
        if (n < 0) return fail(s, "qubit count must be nonnegative");
        size_t id = s.diagrams.add(zx::from_circuit(qcir::QuantumCircuit{static_cast<size_t>(n)}));
        *s.out << fmt::format("stored zx-diagram {}\n", id);
        return 0;
    };
    group.sub.emplace("new", std::move(make_new));

    add_manager_verbs(group, "zx-diagram", &Session::diagrams, diagram_summary);
    return group;
}

inline Command build_tableau_commands() {
    using namespace detail;
    Command group;
    group.name = "tableau";
    group.description = "manage Clifford tableaus interleaved with Pauli-rotation groups";

    Command print;
    print.name = "print";
    print.description =
        "print the focused tableau's elements, or aggregate statistics with --stat";
    print.parser.add_flag("-s", "--stat").help("print rotation statistics instead of elements");
    print.action = [](ParsedArgs const& args, Session& s) {
        if (s.tableaux.empty()) return fail(s, "no tableaus in the workspace");
        auto const& t = s.tableaux.focused();
        *s.out << fmt::format("tableau {}: {}\n", *s.tableaux.focused_id(), tableau_summary(t));
        if (args.flag("stat")) {
            *s.out << fmt::format("  rotations : {}\n", t.rotation_count());
            *s.out << fmt::format("  t-count   : {}\n", t.t_count());
            *s.out << fmt::format("  rz-count  : {}\n", t.rz_count());
            return 0;
        }
        for (size_t i = 0; i < t.elements().size(); ++i) {
            if (std::holds_alternative<tableau::CliffordTableau>(t.elements()[i])) {
                *s.out << fmt::format("  {:>3}: clifford tableau\n", i);
                continue;
            }
            auto const& group_elem = std::get<tableau::RotationGroup>(t.elements()[i]);
            *s.out << fmt::format("  {:>3}: rotation group ({} rotations)\n", i, group_elem.size());
            for (auto const& r : group_elem)
                *s.out << fmt::format("         {}  {}\n", r.pauli().to_string(),
                                      r.angle().to_string());
        }
        return 0;
    };
    group.sub.emplace("print", std::move(print));

    Command make_new;
    make_new.name = "new";
    make_new.description = "add a new identity tableau and focus it";
    make_new.parser.add_positional("n-qubits").integer().optional("1").help("number of qubits");
    make_new.action = [](ParsedArgs const& args, Session& s) {
        int64_t n = args.integer("n-qubits");
        if (n < 0) return fail(s, "qubit count must be nonnegative");
        size_t id = s.tableaux.add(tableau::from_circuit(qcir::QuantumCircuit{static_cast<size_t>(n)}));
        *s.out << fmt::format("stored tableau {}\n", id);
        return 0;
    };
    group.sub.emplace("new", std::move(make_new));

    Command optimize;
    optimize.name = "optimize";
    optimize.description = "optimization passes over the focused tableau";

    Command full;
    full.name = "full";
    full.description =
        "iteratively apply phase merging, internal-H optimization, and phase-polynomial "
        "optimization until the t-count converges";
    full.parser.add_option("-m", "--max-rounds")
        .integer()
        .optional("20")
        .help("round cap for the convergence loop");
    full.action = [](ParsedArgs const& args, Session& s) {
        if (s.tableaux.empty()) return fail(s, "no tableaus in the workspace");
        int64_t max_rounds = args.integer("max-rounds");
        if (max_rounds < 1) return fail(s, "--max-rounds must be positive");
        auto& t = s.tableaux.focused();
        size_t before = t.t_count();
        s.log(LogLevel::debug,
              fmt::format("convergence loop: merge, internal-H, phase-polynomial (cap {} rounds)",
                          max_rounds));
        size_t rounds = tableau::optimize_full(t, static_cast<size_t>(max_rounds));
        *s.out << fmt::format("full optimization: {} rounds, t-count {} -> {}\n", rounds, before,
                              t.t_count());
        return 0;
    };
    optimize.sub.emplace("full", std::move(full));

    Command tmerge_cmd;
    tmerge_cmd.name = "tmerge";
    tmerge_cmd.description =
        "merge rotations with identical Pauli support and absorb Clifford-angle rotations";
    tmerge_cmd.action = [](ParsedArgs const&, Session& s) {
        if (s.tableaux.empty()) return fail(s, "no tableaus in the workspace");
        auto& t = s.tableaux.focused();
        size_t before = t.rotation_count();
        tableau::tmerge(t);
        *s.out << fmt::format("phase merging: rotations {} -> {}, t-count {}\n", before,
                              t.rotation_count(), t.t_count());
        return 0;
    };
    optimize.sub.emplace("tmerge", std::move(tmerge_cmd));

    Command hopt_cmd;
    hopt_cmd.name = "hopt";
    hopt_cmd.description =
        "push non-diagonal rotations through Clifford conjugation so every rotation group "
        "becomes diagonal";
    hopt_cmd.action = [](ParsedArgs const&, Session& s) {
        if (s.tableaux.empty()) return fail(s, "no tableaus in the workspace");
        auto& t = s.tableaux.focused();
        size_t before = t.size();
        tableau::hopt(t);
        *s.out << fmt::format("internal-H optimization: elements {} -> {}\n", before, t.size());
        return 0;
    };
    optimize.sub.emplace("hopt", std::move(hopt_cmd));

    Command phasepoly;
    phasepoly.name = "phasepoly";
    phasepoly.description =
        "re-synthesize diagonal rotation groups as phase polynomials with fewer odd-coefficient "
        "terms";
    phasepoly.parser.add_positional("strategy").optional("todd").choices({"todd"}).help(
        "column-merging strategy");
    phasepoly.action = [](ParsedArgs const& args, Session& s) {
        if (s.tableaux.empty()) return fail(s, "no tableaus in the workspace");
        (void)args.str("strategy");  // single registered strategy
        auto& t = s.tableaux.focused();
        size_t before = t.t_count();
        tableau::todd_pass(t);
        *s.out << fmt::format("phase-polynomial optimization: t-count {} -> {}\n", before,
                              t.t_count());
        return 0;
    };
    optimize.sub.emplace("phasepoly", std::move(phasepoly));

    group.sub.emplace("optimize", std::move(optimize));
    add_manager_verbs(group, "tableau", &Session::tableaux, tableau_summary);
    return group;
}

inline Command build_tensor_commands() {
    using namespace detail;
    Command group;
    group.name = "tensor";
    group.description = "manage dense unitaries and compare them";

    Command print;
    print.name = "print";
    print.description = "print the focused unitary's dimensions (and entries up to 8x8)";
    print.action = [](ParsedArgs const&, Session& s) {
        if (s.unitaries.empty()) return fail(s, "no unitaries in the workspace");
        auto const& u = s.unitaries.focused();
        *s.out << fmt::format("unitary {}: {}\n", *s.unitaries.focused_id(), unitary_summary(u));
        if (u.rows() <= 8) {
            for (Eigen::Index r = 0; r < u.rows(); ++r) {
                *s.out << "  ";
                for (Eigen::Index c = 0; c < u.cols(); ++c)
                    *s.out << fmt::format("{}{:+.4f}{:+.4f}i", c == 0 ? "" : "  ", u(r, c).real(),
                                          u(r, c).imag());
                *s.out << "\n";
            }
        }
        return 0;
    };
    group.sub.emplace("print", std::move(print));

    Command equiv;
    equiv.name = "equiv";
    equiv.description = "check two stored unitaries for equality up to global phase";
    equiv.parser.add_positional("id-a").integer().help("first unitary id");
    equiv.parser.add_positional("id-b").integer().optional().help(
        "second unitary id (the focused unitary by default)");
    equiv.action = [](ParsedArgs const& args, Session& s) {
        auto id_a = checked_id(s, args, "id-a");
        if (!id_a) return 1;
        size_t id_b = 0;
        if (args.has("id-b")) {
            auto parsed = checked_id(s, args, "id-b");
            if (!parsed) return 1;
            id_b = *parsed;
        } else {
            if (s.unitaries.empty()) return fail(s, "no unitaries in the workspace");
            id_b = *s.unitaries.focused_id();
        }
        if (!s.unitaries.has(*id_a)) return fail(s, fmt::format("no unitary with id {}", *id_a));
        if (!s.unitaries.has(id_b)) return fail(s, fmt::format("no unitary with id {}", id_b));
        auto a = s.unitaries.at(*id_a);
        auto b = s.unitaries.at(id_b);
        if (a.rows() != b.rows() || a.cols() != b.cols()) {
            *s.out << "not equivalent (dimensions differ)\n";
            return 1;
        }
        // Diagram contraction yields matrices proportional to the unitary, so
        // rescale both to unit average column norm before comparing.
        for (auto* m : {&a, &b}) {
            std::complex<double> tr = (m->adjoint() * *m).trace();
            double scale = std::sqrt(tr.real() / static_cast<double>(m->rows()));
            if (scale > 1e-12) *m /= scale;
        }
        auto report = tensor::equiv_up_to_global_phase(a, b);
        *s.out << fmt::format("{} (fidelity = {:.9f})\n",
                              report.equivalent ? "equivalent" : "not equivalent", report.fidelity);
        return report.equivalent ? 0 : 1;
    };
    group.sub.emplace("equiv", std::move(equiv));

    add_manager_verbs(group, "unitary", &Session::unitaries, unitary_summary);
    return group;
}

inline Command build_device_commands() {
    using namespace detail;
    Command group;
    group.name = "device";
    group.description = "manage quantum device connectivity graphs";

    Command read;
    read.name = "read";
    read.description = "read a device connectivity file and store it";
    read.parser.add_positional("filepath").help("path to a device file (header plus edge lines)");
    read.action = [](ParsedArgs const& args, Session& s) {
        std::ifstream in{args.str("filepath")};
        if (!in) return fail(s, fmt::format("cannot open '{}'", args.str("filepath")));
        std::stringstream buffer;
        buffer << in.rdbuf();
        try {
            size_t id = s.devices.add(device::parse_device(buffer.str()));
            *s.out << fmt::format("stored device {}: {}\n", id, device_summary(s.devices.focused()));
        } catch (std::exception const& e) {
            return fail(s, fmt::format("'{}': {}", args.str("filepath"), e.what()));
        }
        return 0;
    };
    group.sub.emplace("read", std::move(read));

    Command write;
    write.name = "write";
    write.description = "write the focused device to a connectivity file";
    write.parser.add_positional("filepath").help("output path");
    write.action = [](ParsedArgs const& args, Session& s) {
        if (s.devices.empty()) return fail(s, "no devices in the workspace");
        std::ofstream out{args.str("filepath")};
        if (!out) return fail(s, fmt::format("cannot write '{}'", args.str("filepath")));
        out << s.devices.focused().to_string();
        return 0;
    };
    group.sub.emplace("write", std::move(write));

    Command print;
    print.name = "print";
    print.description = "print the focused device's name, size, and edges";
    print.action = [](ParsedArgs const&, Session& s) {
        if (s.devices.empty()) return fail(s, "no devices in the workspace");
        auto const& d = s.devices.focused();
        *s.out << fmt::format("device {}: {}\n", *s.devices.focused_id(), device_summary(d));
        std::string edges;
        for (auto const& [u, v] : d.edges())
            edges += fmt::format("{}{}-{}", edges.empty() ? "" : ", ", u, v);
        *s.out << fmt::format("  edges: {}\n", edges);
        return 0;
    };
    group.sub.emplace("print", std::move(print));

    Command hex;
    hex.name = "heavy-hex";
    hex.description = "generate a heavy-hex lattice fragment and store it as a device";
    hex.parser.add_positional("n-qubits").integer().help("number of physical qubits");
    hex.action = [](ParsedArgs const& args, Session& s) {
        int64_t n = args.integer("n-qubits");
        if (n < 1) return fail(s, "qubit count must be positive");
        try {
            size_t id = s.devices.add(device::heavy_hex_fragment(static_cast<size_t>(n)));
            *s.out << fmt::format("stored device {}: {}\n", id, device_summary(s.devices.focused()));
        } catch (std::exception const& e) {
            return fail(s, e.what());
        }
        return 0;
    };
    group.sub.emplace("heavy-hex", std::move(hex));

    add_manager_verbs(group, "device", &Session::devices, device_summary);
    return group;
}

inline Command build_route_command() {
    using namespace detail;
    Command route;
    route.name = "route";
    route.description =
        "map the focused circuit onto the focused device, inserting SWAPs so every "
        "two-qubit gate acts on an edge; stores the mapped circuit as a new focused circuit";
    route.parser.add_option("-o", "--objective")
        .choices({"swaps", "depth"})
        .optional("swaps")
        .help("minimize inserted SWAPs or schedule for depth");
    route.parser.add_option("-s", "--scheduler")
        .choices({"heuristic", "search"})
        .optional("heuristic")
        .help("swap selection: one-step greedy or bounded beam search");
    route.parser.add_flag("-d", "--decompose-swaps").help("emit inserted SWAPs as three CX gates");
    route.action = [](ParsedArgs const& args, Session& s) {
        if (s.circuits.empty()) return fail(s, "no circuits in the workspace");
        if (s.devices.empty()) return fail(s, "no devices in the workspace");
        device::RouteOptions options;
        options.objective = args.str("objective") == "depth" ? device::RouteObjective::depth
                                                             : device::RouteObjective::swaps;
        options.scheduler = args.str("scheduler") == "search" ? device::RouteScheduler::search
                                                              : device::RouteScheduler::heuristic;
        options.decompose_swaps = args.flag("decompose-swaps");
        size_t source_id = *s.circuits.focused_id();
        try {
            auto result = device::route(s.circuits.focused(), s.devices.focused(), options);
            size_t id = s.circuits.add(std::move(result.mapped_circuit));
            *s.out << fmt::format(
                "routed circuit {} onto '{}': {} swaps, depth {}, delay {}; stored circuit {}\n",
                source_id, s.devices.focused().name(), result.swap_count, result.mapped_depth,
                result.mapped_delay, id);
        } catch (std::exception const& e) {
            return fail(s, e.what());
        }
        return 0;
    };
    return route;
}

inline Command build_convert_command() {
    using namespace detail;
    Command convert;
    convert.name = "convert";
    convert.description =
        "convert the focused entry of one representation into a new focused entry of another "
        "(qc <-> zx, qc <-> tabl, qc -> ts, zx -> ts)";
    convert.parser.add_positional("src").help("source representation: qc, zx, tabl, or ts");
    convert.parser.add_positional("dst").help("destination representation: qc, zx, tabl, or ts");
    convert.action = [](ParsedArgs const& args, Session& s) {
        auto normalize = [](std::string const& kind) -> std::string {
            if (kind == "qc" || kind == "qcir" || kind == "circuit") return "qc";
            if (kind == "zx") return "zx";
            if (kind == "tabl" || kind == "tableau") return "tabl";
            if (kind == "ts" || kind == "tensor" || kind == "unitary") return "ts";
            return "";
        };
        std::string src = normalize(args.str("src"));
        std::string dst = normalize(args.str("dst"));
        if (src.empty()) return fail(s, fmt::format("unknown representation '{}'", args.str("src")));
        if (dst.empty()) return fail(s, fmt::format("unknown representation '{}'", args.str("dst")));
        try {
            if (src == "qc" && dst == "zx") {
                if (s.circuits.empty()) return fail(s, "no circuits in the workspace");
                size_t id = s.diagrams.add(zx::from_circuit(s.circuits.focused()));
                *s.out << fmt::format("stored zx-diagram {}: {}\n", id,
                                      diagram_summary(s.diagrams.focused()));
                return 0;
            }
            if (src == "zx" && dst == "qc") {
                if (s.diagrams.empty()) return fail(s, "no zx-diagrams in the workspace");
                size_t id = s.circuits.add(zx::extract_circuit(s.diagrams.focused()));
                *s.out << fmt::format("stored circuit {}: {}\n", id,
                                      circuit_summary(s.circuits.focused()));
                return 0;
            }
            if (src == "qc" && dst == "tabl") {
                if (s.circuits.empty()) return fail(s, "no circuits in the workspace");
                size_t id = s.tableaux.add(tableau::from_circuit(s.circuits.focused()));
                *s.out << fmt::format("stored tableau {}: {}\n", id,
                                      tableau_summary(s.tableaux.focused()));
                return 0;
            }
            if (src == "tabl" && dst == "qc") {
                if (s.tableaux.empty()) return fail(s, "no tableaus in the workspace");
                size_t id = s.circuits.add(tableau::to_circuit(s.tableaux.focused()));
                *s.out << fmt::format("stored circuit {}: {}\n", id,
                                      circuit_summary(s.circuits.focused()));
                return 0;
            }
            if (src == "qc" && dst == "ts") {
                if (s.circuits.empty()) return fail(s, "no circuits in the workspace");
                if (s.circuits.focused().n_qubits() > tensor::kMaxDenseQubits)
                    return fail(s, fmt::format("dense unitaries are limited to {} qubits",
                                               tensor::kMaxDenseQubits));
                size_t id = s.unitaries.add(tensor::unitary_of_circuit(s.circuits.focused()));
                *s.out << fmt::format("stored unitary {}: {}\n", id,
                                      unitary_summary(s.unitaries.focused()));
                return 0;
            }
            if (src == "zx" && dst == "ts") {
                if (s.diagrams.empty()) return fail(s, "no zx-diagrams in the workspace");
                size_t id = s.unitaries.add(zx::to_tensor(s.diagrams.focused()));
                *s.out << fmt::format("stored unitary {}: {}\n", id,
                                      unitary_summary(s.unitaries.focused()));
                return 0;
            }
        } catch (std::exception const& e) {
            return fail(s, e.what());
        }
        return fail(s, fmt::format("unsupported conversion '{}' -> '{}'", args.str("src"),
                                   args.str("dst")));
    };
    return convert;
}

inline CommandMap build_utility_commands() {
    using namespace detail;
    CommandMap map;

    Command alias;
    alias.name = "alias";
    alias.description = "list aliases, define one, or delete one with -d";
    alias.parser.add_positional("name").optional().help("alias name");
    alias.parser.add_positional("expansion").optional().help(
        "replacement text (quote it to include spaces)");
    alias.parser.add_flag("-d", "--delete").help("delete the named alias");
    alias.action = [](ParsedArgs const& args, Session& s) {
        if (args.flag("delete")) {
            if (!args.has("name")) return fail(s, "alias -d expects a name");
            if (!s.unset_alias(args.str("name")))
                return fail(s, fmt::format("no alias '{}'", args.str("name")));
            return 0;
        }
        if (!args.has("name")) {
            for (auto const& [name, expansion] : s.aliases)
                *s.out << fmt::format("alias {} \"{}\"\n", name, expansion);
            return 0;
        }
        if (!args.has("expansion")) {
            auto found = s.alias_of(args.str("name"));
            if (!found) return fail(s, fmt::format("no alias '{}'", args.str("name")));
            *s.out << fmt::format("alias {} \"{}\"\n", args.str("name"), *found);
            return 0;
        }
        s.set_alias(args.str("name"), args.str("expansion"));
        return 0;
    };
    map.emplace("alias", std::move(alias));

    Command set;
    set.name = "set";
    set.description = "list variables, set one, or delete one with -d";
    set.parser.add_positional("name").optional().help("variable name");
    set.parser.add_positional("value").optional().help("value to store");
    set.parser.add_flag("-d", "--delete").help("delete the named variable");
    set.action = [](ParsedArgs const& args, Session& s) {
        if (args.flag("delete")) {
            if (!args.has("name")) return fail(s, "set -d expects a name");
            if (!s.unset_variable(args.str("name")))
                return fail(s, fmt::format("no variable '{}'", args.str("name")));
            return 0;
        }
        if (!args.has("name")) {
            for (auto const& [name, value] : s.variables)
                *s.out << fmt::format("set {} \"{}\"\n", name, value);
            return 0;
        }
        if (!args.has("value")) {
            auto found = s.variable_of(args.str("name"));
            if (!found) return fail(s, fmt::format("no variable '{}'", args.str("name")));
            *s.out << fmt::format("set {} \"{}\"\n", args.str("name"), *found);
            return 0;
        }
        s.set_variable(args.str("name"), args.str("value"));
        return 0;
    };
    map.emplace("set", std::move(set));

    Command history;
    history.name = "history";
    history.description = "print executed lines in order, or export them verbatim to a file";
    history.parser.add_positional("filepath").optional().help("export destination");
    history.action = [](ParsedArgs const& args, Session& s) {
        if (args.has("filepath")) {
            std::ofstream out{args.str("filepath")};
            if (!out) return fail(s, fmt::format("cannot write '{}'", args.str("filepath")));
            for (auto const& line : s.history) out << line << "\n";
            return 0;
        }
        for (size_t i = 0; i < s.history.size(); ++i)
            *s.out << fmt::format("{:>4}  {}\n", i + 1, s.history[i]);
        return 0;
    };
    map.emplace("history", std::move(history));

    Command usage;
    usage.name = "usage";
    usage.description = "report wall-clock time since session start and peak memory";
    usage.action = [](ParsedArgs const&, Session& s) {
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - s.started)
                           .count();
        *s.out << fmt::format("time  : {:.3f} s\n", static_cast<double>(elapsed) / 1000.0);
#ifdef QCW_HAS_RUSAGE
        struct rusage usage_info{};
        if (getrusage(RUSAGE_SELF, &usage_info) == 0) {
            *s.out << fmt::format("memory: {:.2f} MB\n",
                                  static_cast<double>(usage_info.ru_maxrss) / 1024.0);
            return 0;
        }
#endif
        *s.out << "memory: n/a\n";
        return 0;
    };
    map.emplace("usage", std::move(usage));

    Command logger;
    logger.name = "logger";
    logger.description = "show or set the log level";
    logger.parser.add_positional("level").optional().choices(
        {"off", "error", "warn", "info", "debug", "trace"});
    logger.action = [](ParsedArgs const& args, Session& s) {
        if (!args.has("level")) {
            *s.out << fmt::format("log level: {}\n", log_level_name(s.log_level));
            return 0;
        }
        s.log_level = *parse_log_level(args.str("level"));
        return 0;
    };
    map.emplace("logger", std::move(logger));

    Command echo;
    echo.name = "echo";
    echo.description = "print the arguments";
    echo.parser.add_positional("text").variadic().help("text to print");
    echo.action = [](ParsedArgs const& args, Session& s) {
        *s.out << fmt::format("{}\n", fmt::join(args.rest("text"), " "));
        return 0;
    };
    map.emplace("echo", std::move(echo));

    Command quit;
    quit.name = "quit";
    quit.description = "leave the shell";
    quit.action = [](ParsedArgs const&, Session& s) {
        s.quit_requested = true;
        return 0;
    };
    map.emplace("quit", std::move(quit));

    return map;
}

/// Composite routines, expressed as command lines run through the shell.
inline CommandMap build_routine_commands() {
    using namespace detail;
    auto make_routine = [](std::string name, std::string description, std::string script) {
        Command c;
        c.name = std::move(name);
        c.description = std::move(description);
        c.action = [script = std::move(script)](ParsedArgs const&, Session& s) {
            if (!s.run_line) return fail(s, "no shell attached");
            return s.run_line(script);
        };
        return c;
    };
    CommandMap map;
    map.emplace("qzq", make_routine("qzq",
                                    "ZX-calculus-based synthesis routine: convert to a ZX-diagram, "
                                    "fully reduce, extract, then run basic optimization",
                                    "qc2zx; zx optimize --full; zx2qc; qcir optimize"));
    map.emplace("qtablq", make_routine("qtablq",
                                       "tableau-based synthesis routine: convert to a tableau, run "
                                       "the full optimization loop, then convert back",
                                       "qc2tabl; tableau optimize full; tabl2qc"));
    return map;
}

/**
 * @brief Builds the full command tree (the `help` command is added by the shell,
 * which owns the registry reference it needs).
 */
inline CommandMap build_commands() {
    CommandMap map;
    map.emplace("qcir", build_qcir_commands());
    map.emplace("zx", build_zx_commands());
    map.emplace("tableau", build_tableau_commands());
    map.emplace("tensor", build_tensor_commands());
    map.emplace("device", build_device_commands());
    map.emplace("route", build_route_command());
    map.emplace("convert", build_convert_command());
    for (auto& [name, cmd] : build_utility_commands()) map.emplace(name, std::move(cmd));
    for (auto& [name, cmd] : build_routine_commands()) map.emplace(name, std::move(cmd));
    return map;
}

/// Short forms used throughout the documentation and the bundled scripts.
inline void install_default_aliases(Session& s) {
    s.set_alias("qc", "qcir");
    s.set_alias("tabl", "tableau");
    s.set_alias("qc2zx", "convert qc zx");
    s.set_alias("zx2qc", "convert zx qc");
    s.set_alias("qc2tabl", "convert qc tabl");
    s.set_alias("tabl2qc", "convert tabl qc");
    s.set_alias("qc2ts", "convert qc ts");
    s.set_alias("zx2ts", "convert zx ts");
}

}  // namespace qcw::cli
