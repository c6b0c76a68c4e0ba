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

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "qcw/qcir/gate.hpp"
#include "qcw/qcir/phase.hpp"

namespace qcw::qcir {

/**
 * @brief Resource summary of a circuit.
 *
 * delay weighs single-qubit gates as 1 unit and multi-qubit gates as 2 units;
 * depth counts every gate as 1.
 */
struct CircuitStats {
    size_t gate_count = 0;
    size_t t_count = 0;         // odd multiples of pi/4 about Z
    size_t rz_count = 0;        // all non-Clifford Z-axis rotations (T included)
    size_t h_count = 0;
    size_t two_qubit_count = 0;
    size_t clifford_count = 0;
    size_t depth = 0;
    size_t delay = 0;
};

/**
 * @brief Gate netlist on a fixed number of qubits.
 */
class QuantumCircuit {
public:
    explicit QuantumCircuit(size_t n_qubits) : _n_qubits{n_qubits} {}

    size_t n_qubits() const { return _n_qubits; }
    std::vector<Gate> const& gates() const { return _gates; }
    size_t size() const { return _gates.size(); }
    bool empty() const { return _gates.empty(); }

    void add_gate(std::string kind, std::vector<size_t> qubits, Phase param = {}) {
        auto const& info = GateRegistry::instance().at(kind);
        if (info.arity == kVariadicArity) {
            if (qubits.size() < 2)
                throw std::invalid_argument(
                    fmt::format("QuantumCircuit: '{}' needs at least 2 qubits", kind));
        } else if (qubits.size() != static_cast<size_t>(info.arity)) {
            throw std::invalid_argument(fmt::format("QuantumCircuit: '{}' expects {} qubits, got {}",
                                                    kind, info.arity, qubits.size()));
        }
        std::set<size_t> distinct;
        for (size_t q : qubits) {
            if (q >= _n_qubits)
                throw std::out_of_range(
                    fmt::format("QuantumCircuit: qubit {} out of range (n={})", q, _n_qubits));
            if (!distinct.insert(q).second)
                throw std::invalid_argument("QuantumCircuit: repeated qubit in one gate");
        }
        if (!info.has_param && !param.is_zero())
            throw std::invalid_argument(fmt::format("QuantumCircuit: '{}' takes no angle", kind));
        _gates.push_back({std::move(kind), std::move(qubits), param});
    }

    // Convenience appenders for the builtin set.
    void h(size_t q) { add_gate("h", {q}); }
    void x(size_t q) { add_gate("x", {q}); }
    void y(size_t q) { add_gate("y", {q}); }
    void z(size_t q) { add_gate("z", {q}); }
    void s(size_t q) { add_gate("s", {q}); }
    void sdg(size_t q) { add_gate("sdg", {q}); }
    void t(size_t q) { add_gate("t", {q}); }
    void tdg(size_t q) { add_gate("tdg", {q}); }
    void sx(size_t q) { add_gate("sx", {q}); }
    void rz(Phase p, size_t q) { add_gate("rz", {q}, p); }
    void rx(Phase p, size_t q) { add_gate("rx", {q}, p); }
    void cx(size_t c, size_t t) { add_gate("cx", {c, t}); }
    void cz(size_t a, size_t b) { add_gate("cz", {a, b}); }
    void swap(size_t a, size_t b) { add_gate("swap", {a, b}); }
    void ccx(size_t c1, size_t c2, size_t t) { add_gate("ccx", {c1, c2, t}); }
    void ccz(size_t a, size_t b, size_t c) { add_gate("ccz", {a, b, c}); }

    /// Reversed gate order with each gate inverted.
    QuantumCircuit adjoint() const {
        QuantumCircuit out{_n_qubits};
        for (auto it = _gates.rbegin(); it != _gates.rend(); ++it) out._gates.push_back(it->inverse());
        return out;
    }

    /// Appends all gates of other. Qubit counts must match.
    void compose(QuantumCircuit const& other) {
        if (other._n_qubits != _n_qubits)
            throw std::invalid_argument("QuantumCircuit: compose needs equal qubit counts");
        _gates.insert(_gates.end(), other._gates.begin(), other._gates.end());
    }

    CircuitStats statistics() const {
        CircuitStats st;
        st.gate_count = _gates.size();
        std::vector<size_t> qdepth(_n_qubits, 0);
        std::vector<size_t> qdelay(_n_qubits, 0);
        for (auto const& g : _gates) {
            bool z_axis = g.kind == "t" || g.kind == "tdg" || g.kind == "rz";
            Phase angle = g.kind == "t"     ? Phase{1, 4}
                          : g.kind == "tdg" ? Phase{7, 4}
                                            : g.param;
            if (z_axis && !angle.is_clifford()) {
                ++st.rz_count;
                if (angle.is_t_like()) ++st.t_count;
            }
            if (g.kind == "h") ++st.h_count;
            if (g.qubits.size() == 2) ++st.two_qubit_count;
            if (g.is_clifford()) ++st.clifford_count;

            size_t d = 0, w = 0;
            for (size_t q : g.qubits) {
                d = std::max(d, qdepth[q]);
                w = std::max(w, qdelay[q]);
            }
            d += 1;
            w += g.qubits.size() == 1 ? 1 : 2;
            for (size_t q : g.qubits) {
                qdepth[q] = d;
                qdelay[q] = w;
            }
            st.depth = std::max(st.depth, d);
            st.delay = std::max(st.delay, w);
        }
        return st;
    }

    bool operator==(QuantumCircuit const& o) const {
        return _n_qubits == o._n_qubits && _gates == o._gates;
    }

    /// One-line-per-gate text form; stable across runs.
    std::string to_string() const {
        std::string s = fmt::format("circuit on {} qubits, {} gates\n", _n_qubits, _gates.size());
        for (auto const& g : _gates) {
            s += "  " + g.kind;
            if (g.type().has_param) s += "(" + g.param.to_string() + ")";
            for (size_t q : g.qubits) s += fmt::format(" q{}", q);
            s += '\n';
        }
        return s;
    }

private:
    size_t _n_qubits;
    std::vector<Gate> _gates;
};

}  // namespace qcw::qcir
