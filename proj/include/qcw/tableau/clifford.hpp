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

#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcw/qcir/circuit.hpp"
#include "qcw/qcir/gate.hpp"
#include "qcw/tableau/pauli.hpp"

namespace qcw::tableau {

/**
 * @brief A Clifford operator stored as the images of the Pauli generators.
 *
 * Row q of the destabilizer half is C X_q C^dag; row q of the stabilizer
 * half is C Z_q C^dag. Rows stay hermitian and satisfy the symplectic
 * commutation pattern of the generators they image.
 */
class CliffordTableau {
public:
    explicit CliffordTableau(size_t n) {
        _destab.reserve(n);
        _stab.reserve(n);
        for (size_t q = 0; q < n; ++q) {
            _destab.push_back(PauliString::make_x(n, q));
            _stab.push_back(PauliString::make_z(n, q));
        }
    }

    size_t num_qubits() const { return _destab.size(); }
    PauliString const& destabilizer(size_t q) const { return _destab.at(q); }
    PauliString const& stabilizer(size_t q) const { return _stab.at(q); }

    bool is_identity() const {
        size_t n = num_qubits();
        for (size_t q = 0; q < n; ++q) {
            if (_destab[q] != PauliString::make_x(n, q)) return false;
            if (_stab[q] != PauliString::make_z(n, q)) return false;
        }
        return true;
    }

    bool operator==(CliffordTableau const& o) const {
        return _destab == o._destab && _stab == o._stab;
    }
    bool operator!=(CliffordTableau const& o) const { return !(*this == o); }

    /// Conjugation pattern of the generator images; violations mean a bug.
    bool symplectic_ok() const {
        size_t n = num_qubits();
        for (size_t i = 0; i < n; ++i) {
            if (!_destab[i].is_hermitian() || !_stab[i].is_hermitian()) return false;
            for (size_t j = 0; j < n; ++j) {
                bool anti = i == j;
                if (_destab[i].commutes_with(_stab[j]) == anti) return false;
                if (!_destab[i].commutes_with(_destab[j])) return false;
                if (!_stab[i].commutes_with(_stab[j])) return false;
            }
        }
        return true;
    }

    /// Left-composes the named gate: this <- U o this.
    void apply_gate(std::string const& kind, std::vector<size_t> const& qubits) {
        for (auto& row : _destab) row.apply_gate(kind, qubits);
        for (auto& row : _stab) row.apply_gate(kind, qubits);
        assert(symplectic_ok());
    }
    void apply_gate(qcir::Gate const& g) { apply_gate(g.kind, g.qubits); }

    /// Image of an arbitrary Pauli: returns C p C^dag.
    PauliString evaluate(PauliString const& p) const {
        size_t n = num_qubits();
        if (p.num_qubits() != n) throw std::invalid_argument("CliffordTableau: size mismatch");
        PauliString r{n};
        r.add_i_power(p.i_power());
        for (size_t q = 0; q < n; ++q) {
            if (p.x_bit(q)) r = r * _destab[q];
            if (p.z_bit(q)) r = r * _stab[q];
        }
        return r;
    }

    /// Operator composition: returns a o b (b acts first).
    static CliffordTableau compose(CliffordTableau const& a, CliffordTableau const& b) {
        size_t n = a.num_qubits();
        if (b.num_qubits() != n) throw std::invalid_argument("CliffordTableau: size mismatch");
        CliffordTableau r{n};
        for (size_t q = 0; q < n; ++q) {
            r._destab[q] = a.evaluate(b._destab[q]);
            r._stab[q] = a.evaluate(b._stab[q]);
        }
        assert(r.symplectic_ok());
        return r;
    }

    /// Right-composes the named gate: this <- this o U.
    void right_compose_gate(std::string const& kind, std::vector<size_t> const& qubits) {
        size_t n = num_qubits();
        std::vector<std::pair<size_t, std::pair<PauliString, PauliString>>> updates;
        for (size_t q : qubits) {
            auto px = PauliString::make_x(n, q);
            auto pz = PauliString::make_z(n, q);
            px.apply_gate(kind, qubits);
            pz.apply_gate(kind, qubits);
            updates.push_back({q, {evaluate(px), evaluate(pz)}});
        }
        for (auto& [q, rows] : updates) {
            _destab[q] = std::move(rows.first);
            _stab[q] = std::move(rows.second);
        }
        assert(symplectic_ok());
    }

    /// Left-composes exp(-i*(k*pi/2)/2 * p): this <- V o this.
    void left_compose_rotation(PauliString const& p, int k) {
        for (auto& row : _destab) row = conj_by_rotation(std::move(row), p, k);
        for (auto& row : _stab) row = conj_by_rotation(std::move(row), p, k);
        assert(symplectic_ok());
    }

    /// Right-composes exp(-i*(k*pi/2)/2 * p): this <- this o V.
    void right_compose_rotation(PauliString const& p, int k) {
        size_t n = num_qubits();
        std::vector<PauliString> nd, ns;
        nd.reserve(n);
        ns.reserve(n);
        for (size_t q = 0; q < n; ++q) {
            nd.push_back(evaluate(conj_by_rotation(PauliString::make_x(n, q), p, k)));
            ns.push_back(evaluate(conj_by_rotation(PauliString::make_z(n, q), p, k)));
        }
        _destab = std::move(nd);
        _stab = std::move(ns);
        assert(symplectic_ok());
    }

    /**
     * @brief Gates g_1..g_m with g_m o ... o g_1 o this == identity.
     *
     * Gaussian-style sweep over {h, cx, s, cz, x, z}: qubit by qubit, the
     * destabilizer row is driven to X_k, then the stabilizer row to Z_k,
     * using only gates on qubits >= k so finished rows stay fixed.
     */
    std::vector<qcir::Gate> reduction_gates() const {
        CliffordTableau c = *this;
        std::vector<qcir::Gate> gates;
        auto emit = [&](std::string kind, std::vector<size_t> qs) {
            c.apply_gate(kind, qs);
            gates.push_back({std::move(kind), std::move(qs), {}});
        };
        size_t n = num_qubits();
        for (size_t k = 0; k < n; ++k) {
            // destabilizer row k -> +-X_k
            {
                auto const& row = c._destab[k];
                if (row.x_bits() == 0) {
                    for (size_t j = k; j < n; ++j)
                        if (row.z_bit(j)) {
                            emit("h", {j});
                            break;
                        }
                }
                if (!c._destab[k].x_bit(k)) {
                    for (size_t j = k + 1; j < n; ++j)
                        if (c._destab[k].x_bit(j)) {
                            emit("cx", {k, j});
                            emit("cx", {j, k});
                            emit("cx", {k, j});
                            break;
                        }
                }
                for (size_t j = k + 1; j < n; ++j)
                    if (c._destab[k].x_bit(j)) emit("cx", {k, j});
                if (c._destab[k].z_bit(k)) emit("s", {k});
                for (size_t j = k + 1; j < n; ++j)
                    if (c._destab[k].z_bit(j)) emit("cz", {k, j});
            }
            // stabilizer row k -> +-Z_k, destabilizer row untouched
            {
                for (size_t j = k + 1; j < n; ++j) {
                    if (c._stab[k].x_bit(j)) {
                        if (c._stab[k].z_bit(j)) emit("s", {j});
                        emit("h", {j});
                    }
                }
                if (c._stab[k].x_bit(k)) {
                    emit("h", {k});
                    emit("s", {k});
                    emit("h", {k});
                }
                for (size_t j = k + 1; j < n; ++j)
                    if (c._stab[k].z_bit(j)) emit("cx", {j, k});
            }
            if (c._stab[k].sign() < 0) emit("x", {k});
            if (c._destab[k].sign() < 0) emit("z", {k});
        }
        if (!c.is_identity())
            throw std::logic_error("CliffordTableau: reduction did not reach the identity");
        return gates;
    }

    /// The inverse operator (equal to the adjoint).
    CliffordTableau inverse() const {
        CliffordTableau inv{num_qubits()};
        for (auto const& g : reduction_gates()) inv.apply_gate(g);
        return inv;
    }

    /// A circuit over {h, s, sdg, cx, cz, x, z} implementing this operator exactly.
    qcir::QuantumCircuit to_circuit() const {
        auto gates = reduction_gates();
        qcir::QuantumCircuit out{num_qubits()};
        for (auto it = gates.rbegin(); it != gates.rend(); ++it)
            out.add_gate(it->kind == "s" ? "sdg" : it->kind, it->qubits);
        return out;
    }

    std::string to_string() const {
        std::string out;
        for (size_t q = 0; q < num_qubits(); ++q)
            out += fmt::format("X{} -> {}\n", q, _destab[q].to_string());
        for (size_t q = 0; q < num_qubits(); ++q)
            out += fmt::format("Z{} -> {}\n", q, _stab[q].to_string());
        return out;
    }

private:
    std::vector<PauliString> _destab;
    std::vector<PauliString> _stab;
};

}  // namespace qcw::tableau
