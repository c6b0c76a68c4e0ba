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

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qcw/qcir/circuit.hpp"
#include "qcw/qcir/decompose.hpp"
#include "qcw/tableau/clifford.hpp"
#include "qcw/tableau/pauli.hpp"

namespace qcw::tableau {

using RotationGroup = std::vector<PauliRotation>;
using TableauElement = std::variant<CliffordTableau, RotationGroup>;

/**
 * @brief A circuit in Clifford + Pauli-rotation form.
 *
 * Elements act in list order (element 0 first). Rotations inside a group
 * likewise apply in vector order.
 */
class Tableau {
public:
    explicit Tableau(size_t n) : _n{n} {}

    size_t num_qubits() const { return _n; }
    std::vector<TableauElement>& elements() { return _elements; }
    std::vector<TableauElement> const& elements() const { return _elements; }
    size_t size() const { return _elements.size(); }

    void push_back(TableauElement e) { _elements.push_back(std::move(e)); }

    size_t rotation_count() const {
        size_t total = 0;
        for (auto const& e : _elements)
            if (auto const* g = std::get_if<RotationGroup>(&e)) total += g->size();
        return total;
    }

    /// Rotations by an odd multiple of pi/4.
    size_t t_count() const {
        size_t total = 0;
        for (auto const& e : _elements)
            if (auto const* g = std::get_if<RotationGroup>(&e))
                for (auto const& r : *g) total += r.is_t_like() ? 1 : 0;
        return total;
    }

    /// Rotations by any non-Clifford angle (pi/4 ones included).
    size_t rz_count() const {
        size_t total = 0;
        for (auto const& e : _elements)
            if (auto const* g = std::get_if<RotationGroup>(&e))
                for (auto const& r : *g) total += r.is_clifford() ? 0 : 1;
        return total;
    }

    std::string to_string() const {
        std::string out;
        for (auto const& e : _elements) {
            if (auto const* g = std::get_if<RotationGroup>(&e)) {
                out += "rotations:\n";
                for (auto const& r : *g) out += "  " + r.to_string() + "\n";
            } else {
                out += "clifford:\n" + std::get<CliffordTableau>(e).to_string();
            }
        }
        return out;
    }

private:
    size_t _n;
    std::vector<TableauElement> _elements;
};

/// Inverse kind for the Pauli-level Clifford primitives.
inline std::string clifford_inverse_kind(std::string const& kind) {
    if (kind == "s") return "sdg";
    if (kind == "sdg") return "s";
    if (kind == "sx") return "sxdg";
    if (kind == "sxdg") return "sx";
    return kind;  // h, x, y, z, cx, cz, swap are involutions
}

/**
 * @brief Converts a Clifford+rotation netlist into [rotation group, Clifford].
 *
 * Every non-Clifford rotation gate is commuted to the front by conjugating
 * its Pauli axis with the inverse of the Clifford prefix before it, so the
 * result is one rotation group followed by one Clifford tableau.
 */
inline Tableau from_circuit(qcir::QuantumCircuit const& qc) {
    size_t n = qc.n_qubits();
    CliffordTableau fwd{n};  // accumulated Clifford prefix
    CliffordTableau inv{n};  // its inverse, kept in lockstep
    RotationGroup rots;

    auto apply_clifford = [&](std::string const& kind, std::vector<size_t> const& qs) {
        fwd.apply_gate(kind, qs);
        inv.right_compose_gate(clifford_inverse_kind(kind), qs);
    };
    auto add_rotation = [&](PauliString const& axis, qcir::Phase angle) {
        if (angle.is_zero()) return;
        rots.emplace_back(axis, angle);
    };
    // quarter turns about Z as primitive gates
    auto apply_z_power = [&](int quarters, size_t q) {
        switch (quarters & 3) {
            case 1: apply_clifford("s", {q}); break;
            case 2: apply_clifford("z", {q}); break;
            case 3: apply_clifford("sdg", {q}); break;
            default: break;
        }
    };

    auto handle = [&](qcir::Gate const& g, auto&& self) -> void {
        auto const& kind = g.kind;
        if (kind == "t") return add_rotation(inv.stabilizer(g.qubits[0]), qcir::Phase{1, 4});
        if (kind == "tdg") return add_rotation(inv.stabilizer(g.qubits[0]), qcir::Phase{-1, 4});
        if (kind == "rz") {
            if (!g.param.is_clifford()) return add_rotation(inv.stabilizer(g.qubits[0]), g.param);
            int quarters = g.param.denominator() == 2 ? static_cast<int>(g.param.numerator())
                                                      : static_cast<int>(2 * g.param.numerator());
            return apply_z_power(quarters, g.qubits[0]);
        }
        if (kind == "rx") {
            if (!g.param.is_clifford()) return add_rotation(inv.destabilizer(g.qubits[0]), g.param);
            int quarters = g.param.denominator() == 2 ? static_cast<int>(g.param.numerator())
                                                      : static_cast<int>(2 * g.param.numerator());
            if ((quarters & 3) == 0) return;
            apply_clifford("h", {g.qubits[0]});
            apply_z_power(quarters, g.qubits[0]);
            apply_clifford("h", {g.qubits[0]});
            return;
        }
        if (kind == "h" || kind == "x" || kind == "y" || kind == "z" || kind == "s" ||
            kind == "sdg" || kind == "sx" || kind == "cx" || kind == "cz" || kind == "swap")
            return apply_clifford(kind, g.qubits);
        if (kind == "ccx" || kind == "ccz" || kind == "mcx" || kind == "mcz") {
            qcir::QuantumCircuit tmp{n};
            tmp.add_gate(kind, g.qubits, g.param);
            auto expanded = qcir::decompose_multi_control(tmp);
            for (auto const& sub : expanded.gates()) self(sub, self);
            return;
        }
        throw std::invalid_argument(
            fmt::format("tableau: gate kind '{}' has no Clifford+rotation form", kind));
    };
    for (auto const& g : qc.gates()) handle(g, handle);

    Tableau t{n};
    t.push_back(std::move(rots));
    t.push_back(std::move(fwd));
    return t;
}

/// Appends a circuit implementing exp(-i*angle/2 * P) to out.
inline void emit_rotation(qcir::QuantumCircuit& out, PauliRotation const& r) {
    if (r.is_zero_angle()) return;
    auto const& p = r.pauli();
    std::vector<size_t> support;
    for (size_t q = 0; q < p.num_qubits(); ++q)
        if (p.x_bit(q) || p.z_bit(q)) support.push_back(q);
    if (support.empty()) return;  // identity axis: a global phase only

    // map every support qubit into the Z basis, then fold onto the pivot
    std::vector<qcir::Gate> pre;
    for (size_t q : support) {
        if (p.x_bit(q)) {
            if (p.z_bit(q)) pre.push_back({"sdg", {q}, {}});
            pre.push_back({"h", {q}, {}});
        }
    }
    size_t pivot = support[0];
    for (size_t i = 1; i < support.size(); ++i) pre.push_back({"cx", {support[i], pivot}, {}});

    for (auto const& g : pre) out.add_gate(g.kind, g.qubits);
    out.rz(r.angle(), pivot);
    for (auto it = pre.rbegin(); it != pre.rend(); ++it)
        out.add_gate(clifford_inverse_kind(it->kind), it->qubits);
}

/// Lowers a tableau back to a netlist, element by element.
inline qcir::QuantumCircuit to_circuit(Tableau const& t) {
    qcir::QuantumCircuit out{t.num_qubits()};
    for (auto const& e : t.elements()) {
        if (auto const* g = std::get_if<RotationGroup>(&e)) {
            for (auto const& r : *g) emit_rotation(out, r);
        } else {
            out.compose(std::get<CliffordTableau>(e).to_circuit());
        }
    }
    return out;
}

}  // namespace qcw::tableau
