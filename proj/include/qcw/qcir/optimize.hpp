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

#include <optional>

#include "qcw/qcir/circuit.hpp"

namespace qcw::qcir {

namespace detail {

enum class Axis { z, x, none };

inline Axis rotation_axis(Gate const& g) {
    if (g.qubits.size() != 1) return Axis::none;
    if (g.kind == "z" || g.kind == "s" || g.kind == "sdg" || g.kind == "t" || g.kind == "tdg" ||
        g.kind == "rz")
        return Axis::z;
    if (g.kind == "x" || g.kind == "sx" || g.kind == "rx") return Axis::x;
    return Axis::none;
}

inline Phase rotation_angle(Gate const& g) {
    if (g.kind == "z" || g.kind == "x") return Phase{1};
    if (g.kind == "s" || g.kind == "sx") return Phase{1, 2};
    if (g.kind == "sdg") return Phase{3, 2};
    if (g.kind == "t") return Phase{1, 4};
    if (g.kind == "tdg") return Phase{7, 4};
    return g.param;
}

/// Canonical gate for an axis rotation; nullopt when the angle is zero.
inline std::optional<Gate> make_rotation(Axis axis, Phase angle, size_t qubit) {
    if (angle.is_zero()) return std::nullopt;
    if (axis == Axis::z) {
        if (angle == Phase{1, 4}) return Gate{"t", {qubit}, {}};
        if (angle == Phase{1, 2}) return Gate{"s", {qubit}, {}};
        if (angle == Phase{1}) return Gate{"z", {qubit}, {}};
        if (angle == Phase{3, 2}) return Gate{"sdg", {qubit}, {}};
        if (angle == Phase{7, 4}) return Gate{"tdg", {qubit}, {}};
        return Gate{"rz", {qubit}, angle};
    }
    if (angle == Phase{1, 2}) return Gate{"sx", {qubit}, {}};
    if (angle == Phase{1}) return Gate{"x", {qubit}, {}};
    return Gate{"rx", {qubit}, angle};
}

}  // namespace detail

/**
 * @brief Peephole cleanup: cancels adjacent inverse pairs, fuses adjacent
 * same-axis rotations, and drops identity rotations.
 *
 * Equivalence is preserved up to global phase; no resource count grows.
 */
inline QuantumCircuit basic_optimize(QuantumCircuit const& c) {
    using detail::Axis;
    std::vector<Gate> out;
    std::vector<bool> alive;
    // Per-qubit stack of indices into out; the top is the latest survivor.
    std::vector<std::vector<size_t>> tops(c.n_qubits());

    auto common_top = [&](Gate const& g) -> std::optional<size_t> {
        size_t idx = SIZE_MAX;
        for (size_t q : g.qubits) {
            if (tops[q].empty()) return std::nullopt;
            if (idx == SIZE_MAX)
                idx = tops[q].back();
            else if (tops[q].back() != idx)
                return std::nullopt;
        }
        // the previous gate must touch exactly the same qubits
        if (out[idx].qubits.size() != g.qubits.size()) return std::nullopt;
        return idx;
    };

    auto pop_gate = [&](size_t idx) {
        for (size_t q : out[idx].qubits) tops[q].pop_back();
        alive[idx] = false;
    };

    for (auto const& input_gate : c.gates()) {
        Gate g = input_gate;
        if (detail::rotation_axis(g) != Axis::none && detail::rotation_angle(g).is_zero())
            continue;  // identity rotation
        while (true) {
            auto prev = common_top(g);
            if (prev && out[*prev].is_inverse_of(g)) {
                pop_gate(*prev);
                break;
            }
            Axis axis = detail::rotation_axis(g);
            if (prev && axis != Axis::none && detail::rotation_axis(out[*prev]) == axis) {
                Phase fused = detail::rotation_angle(out[*prev]) + detail::rotation_angle(g);
                size_t qubit = g.qubits[0];
                pop_gate(*prev);
                auto merged = detail::make_rotation(axis, fused, qubit);
                if (!merged) break;
                g = *merged;
                continue;  // the merged gate may now cancel with an older one
            }
            out.push_back(g);
            alive.push_back(true);
            for (size_t q : g.qubits) tops[q].push_back(out.size() - 1);
            break;
        }
    }

    QuantumCircuit result{c.n_qubits()};
    for (size_t i = 0; i < out.size(); ++i)
        if (alive[i]) result.add_gate(out[i].kind, out[i].qubits, out[i].param);
    if (result.size() < c.size()) return basic_optimize(result);  // fixpoint
    return result;
}

}  // namespace qcw::qcir
