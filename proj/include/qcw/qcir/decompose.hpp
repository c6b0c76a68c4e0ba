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

#include <bit>

#include "qcw/qcir/circuit.hpp"

namespace qcw::qcir {

/// Appends exp(-i*angle/2 * Z-parity(support)) as a CX ladder around one RZ.
inline void append_parity_rz(QuantumCircuit& c, std::vector<size_t> const& support, Phase angle) {
    for (size_t i = 0; i + 1 < support.size(); ++i) c.cx(support[i], support.back());
    c.rz(angle, support.back());
    for (size_t i = support.size() - 1; i-- > 0;) c.cx(support[i], support.back());
}

/**
 * @brief Appends the phase-polynomial expansion of a multi-controlled Z.
 *
 * pi * x_1...x_m expands over GF(2) parities as
 * (pi / 2^(m-1)) * sum over nonempty S of (-1)^(|S|+1) * parity(S),
 * so the emitted rotations are exact rational phases. Subsets are visited
 * by (size, numeric mask) order for determinism.
 */
inline void append_mcz_expansion(QuantumCircuit& c, std::vector<size_t> const& wires) {
    size_t m = wires.size();
    std::int64_t den = std::int64_t{1} << (m - 1);  // angle unit pi/2^(m-1)
    std::vector<size_t> masks;
    for (size_t mask = 1; mask < (size_t{1} << m); ++mask) masks.push_back(mask);
    std::sort(masks.begin(), masks.end(), [](size_t a, size_t b) {
        auto pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    for (size_t mask : masks) {
        std::vector<size_t> support;
        for (size_t j = 0; j < m; ++j)
            if ((mask >> j) & 1) support.push_back(wires[j]);
        std::int64_t sign = std::popcount(mask) % 2 == 1 ? 1 : -1;
        append_parity_rz(c, support, Phase{sign, den});
    }
}

/**
 * @brief Expands ccx/ccz/mcx/mcz into the single- and two-qubit builtin set.
 *
 * The RZ angles stay exact rationals, so downstream passes keep exact phases.
 */
inline QuantumCircuit decompose_multi_control(QuantumCircuit const& c) {
    QuantumCircuit out{c.n_qubits()};
    for (auto const& g : c.gates()) {
        if (g.kind == "ccz" || g.kind == "mcz") {
            append_mcz_expansion(out, g.qubits);
        } else if (g.kind == "ccx" || g.kind == "mcx") {
            out.h(g.qubits.back());
            append_mcz_expansion(out, g.qubits);
            out.h(g.qubits.back());
        } else {
            out.add_gate(g.kind, g.qubits, g.param);
        }
    }
    return out;
}

}  // namespace qcw::qcir
