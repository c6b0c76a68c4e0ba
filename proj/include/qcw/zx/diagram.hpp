/**
 * Copyright 2026 the qcw authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "qcw/qcir/circuit.hpp"
#include "qcw/qcir/decompose.hpp"
#include "qcw/qcir/optimize.hpp"
#include "qcw/qcir/phase.hpp"

namespace qcw::zx {

enum class VertexType { boundary, z, x };
enum class EdgeType { simple, hadamard };

/// Composing two wire segments: two hadamards cancel.
inline EdgeType compose_edges(EdgeType a, EdgeType b) {
    return a == b ? EdgeType::simple : EdgeType::hadamard;
}

inline char const* to_string(VertexType t) {
    switch (t) {
        case VertexType::boundary: return "B";
        case VertexType::z: return "Z";
        default: return "X";
    }
}

inline char const* to_string(EdgeType t) { return t == EdgeType::simple ? "S" : "H"; }

struct ZXVertex {
    size_t id = 0;
    VertexType type = VertexType::z;
    qcir::Phase phase{};
    /// Wire hint used only for printing; rewrites do not keep it meaningful.
    int qubit = -1;
    std::map<size_t, EdgeType> neighbors;

    bool is_boundary() const { return type == VertexType::boundary; }
    bool is_spider() const { return type != VertexType::boundary; }
};

struct ZXStats {
    size_t n_vertices = 0;
    size_t n_edges = 0;
    size_t n_z = 0;
    size_t n_x = 0;
    size_t n_boundaries = 0;
    size_t n_hadamard_edges = 0;
    size_t t_count = 0;          ///< spiders with denominator-4 phase
    size_t non_clifford_count = 0;
};

/**
 * @brief Undirected open graph of spiders; the unit of the diagram rewrite engine.
 *
 * At most one edge per vertex pair. Vertex ids grow monotonically and are never
 * reused, so iterating the id-ordered vertex map is creation order and every
 * pass over the diagram is deterministic. All mutating helpers below the
 * "semantic primitives" marker preserve the represented linear map up to a
 * global scalar.
 */
class ZXDiagram {
public:
    ZXDiagram() = default;

    size_t add_vertex(VertexType t, qcir::Phase p = {}, int qubit = -1) {
        size_t id = _next_id++;
        _vertices.emplace(id, ZXVertex{id, t, p, qubit, {}});
        return id;
    }

    size_t add_input(int qubit) {
        size_t id = add_vertex(VertexType::boundary, {}, qubit);
        _inputs.push_back(id);
        return id;
    }

    size_t add_output(int qubit) {
        size_t id = add_vertex(VertexType::boundary, {}, qubit);
        _outputs.push_back(id);
        return id;
    }

    bool has_vertex(size_t id) const { return _vertices.count(id) != 0; }

    ZXVertex& vertex(size_t id) {
        auto it = _vertices.find(id);
        if (it == _vertices.end()) throw std::out_of_range(fmt::format("ZXDiagram: no vertex {}", id));
        return it->second;
    }

    ZXVertex const& vertex(size_t id) const {
        auto it = _vertices.find(id);
        if (it == _vertices.end()) throw std::out_of_range(fmt::format("ZXDiagram: no vertex {}", id));
        return it->second;
    }

    std::map<size_t, ZXVertex> const& vertices() const { return _vertices; }
    std::vector<size_t> const& inputs() const { return _inputs; }
    std::vector<size_t> const& outputs() const { return _outputs; }

    size_t degree(size_t id) const { return vertex(id).neighbors.size(); }

    std::optional<EdgeType> edge_type(size_t u, size_t v) const {
        auto const& nb = vertex(u).neighbors;
        auto it = nb.find(v);
        if (it == nb.end()) return std::nullopt;
        return it->second;
    }

    void add_edge(size_t u, size_t v, EdgeType t) {
        if (u == v) throw std::invalid_argument("ZXDiagram: self-loop edges are not representable");
        ZXVertex& vu = vertex(u);
        ZXVertex& vv = vertex(v);
        if (vu.neighbors.count(v)) throw std::invalid_argument(fmt::format("ZXDiagram: edge {}-{} exists", u, v));
        vu.neighbors.emplace(v, t);
        vv.neighbors.emplace(u, t);
    }

    void remove_edge(size_t u, size_t v) {
        if (!vertex(u).neighbors.erase(v) || !vertex(v).neighbors.erase(u))
            throw std::invalid_argument(fmt::format("ZXDiagram: edge {}-{} missing", u, v));
    }

    void set_edge_type(size_t u, size_t v, EdgeType t) {
        vertex(u).neighbors.at(v) = t;
        vertex(v).neighbors.at(u) = t;
    }

    void remove_vertex(size_t id) {
        ZXVertex& v = vertex(id);
        for (auto const& [w, t] : v.neighbors) _vertices.at(w).neighbors.erase(id);
        _vertices.erase(id);
        std::erase(_inputs, id);
        std::erase(_outputs, id);
    }

    size_t n_edges() const {
        size_t twice = 0;
        for (auto const& [id, v] : _vertices) twice += v.neighbors.size();
        return twice / 2;
    }

    /// Edge list with u < v, ascending; a safe snapshot for rewrite passes.
    std::vector<std::tuple<size_t, size_t, EdgeType>> edges() const {
        std::vector<std::tuple<size_t, size_t, EdgeType>> out;
        for (auto const& [u, v] : _vertices)
            for (auto const& [w, t] : v.neighbors)
                if (u < w) out.emplace_back(u, w, t);
        return out;
    }

    // ---- semantic primitives ------------------------------------------------

    /**
     * @brief Adds an edge while keeping spider-spider edges hadamard-only.
     *
     * Resolution table (same-color spiders, valid up to scalar):
     *   - u == v hadamard: pi phase flip; u == v simple: drops.
     *   - parallel hadamard pair: both cancel.
     *   - simple edge between spiders: the pair fuses (a parallel hadamard
     *     adds pi to the surviving phase).
     * Edges touching a boundary are added verbatim; boundaries have degree one,
     * so parallel edges cannot involve them.
     *
     * Returns the id that carries u's role afterwards (u itself unless a fuse
     * cascade consumed it).
     */
    size_t add_edge_resolved(size_t u, size_t v, EdgeType t) {
        if (u == v) {
            if (t == EdgeType::hadamard) vertex(u).phase += qcir::Phase{1, 1};
            return u;
        }
        if (vertex(u).is_boundary() || vertex(v).is_boundary()) {
            add_edge(u, v, t);
            return u;
        }
        auto existing = edge_type(u, v);
        if (!existing) {
            if (t == EdgeType::hadamard) {
                add_edge(u, v, t);
                return u;
            }
            fuse_into(u, v);
            return u;
        }
        if (*existing == EdgeType::hadamard && t == EdgeType::hadamard) {
            remove_edge(u, v);
            return u;
        }
        // one simple and one hadamard: fuse and pick up a pi
        remove_edge(u, v);
        fuse_into(u, v);
        vertex(u).phase += qcir::Phase{1, 1};
        return u;
    }

    /**
     * @brief Fuses spider v into spider u (phases add, v's edges move to u).
     *
     * Any u-v edge must have been removed by the caller. May cascade when moved
     * edges resolve into further fusions; u always survives.
     */
    void fuse_into(size_t u, size_t v) {
        ZXVertex& vu = vertex(u);
        ZXVertex& vv = vertex(v);
        if (!vu.is_spider() || !vv.is_spider())
            throw std::invalid_argument("ZXDiagram: fuse_into needs two spiders");
        if (u == v) throw std::invalid_argument("ZXDiagram: fuse_into on one spider");
        vu.phase += vv.phase;
        auto moved = vv.neighbors;
        remove_vertex(v);
        for (auto const& [w, t] : moved) {
            // a neighbor consumed by an earlier cascade step was fused into u,
            // so its pending edge is a self-loop on u
            add_edge_resolved(u, has_vertex(w) ? w : u, t);
        }
    }

    /// Splits edge u-v by a fresh phase-0 z-spider; the u-side edge gets type
    /// `first` and the far side compensates so the wire stays equivalent.
    size_t insert_identity(size_t u, size_t v, EdgeType first) {
        EdgeType old = *edge_type(u, v);
        remove_edge(u, v);
        size_t w = add_vertex(VertexType::z, {}, vertex(u).qubit);
        add_edge(u, w, first);
        add_edge(w, v, compose_edges(first, old));
        return w;
    }

    // ---- shape queries -------------------------------------------------------

    bool is_graph_like() const {
        for (auto const& [id, v] : _vertices) {
            if (v.type == VertexType::x) return false;
            if (v.is_boundary()) {
                if (v.neighbors.size() != 1) return false;
                if (v.neighbors.begin()->second != EdgeType::simple) return false;
            } else {
                for (auto const& [w, t] : v.neighbors)
                    if (vertex(w).is_spider() && t != EdgeType::hadamard) return false;
            }
        }
        return true;
    }

    ZXStats stats() const {
        ZXStats st;
        st.n_vertices = _vertices.size();
        st.n_edges = n_edges();
        for (auto const& [id, v] : _vertices) {
            switch (v.type) {
                case VertexType::boundary: ++st.n_boundaries; break;
                case VertexType::z: ++st.n_z; break;
                case VertexType::x: ++st.n_x; break;
            }
            if (v.is_spider()) {
                if (v.phase.is_t_like()) ++st.t_count;
                if (!v.phase.is_clifford()) ++st.non_clifford_count;
            }
            for (auto const& [w, t] : v.neighbors)
                if (id < w && t == EdgeType::hadamard) ++st.n_hadamard_edges;
        }
        return st;
    }

    std::string to_string() const {
        std::string out = fmt::format("zx diagram: {} vertices, {} edges, {} inputs, {} outputs\n",
                                      _vertices.size(), n_edges(), _inputs.size(), _outputs.size());
        for (auto const& [id, v] : _vertices) {
            out += fmt::format("  v{} {} phase={} qubit={} :", id, zx::to_string(v.type),
                               v.phase.to_string(), v.qubit);
            for (auto const& [w, t] : v.neighbors) out += fmt::format(" {}{}", zx::to_string(t), w);
            out += '\n';
        }
        return out;
    }

private:
    size_t _next_id = 0;
    std::map<size_t, ZXVertex> _vertices;
    std::vector<size_t> _inputs;
    std::vector<size_t> _outputs;
};

/**
 * @brief Builds the wire-by-wire diagram of a circuit.
 *
 * Hadamards toggle the pending edge type instead of adding vertices; every
 * other supported gate appends fresh spiders, so construction never creates
 * parallel edges. Multi-controlled gates go through their phase-rotation
 * decomposition first.
 */
inline ZXDiagram from_circuit(qcir::QuantumCircuit const& c) {
    ZXDiagram g;
    size_t n = c.n_qubits();
    std::vector<size_t> cur(n);
    std::vector<EdgeType> pend(n, EdgeType::simple);
    for (size_t q = 0; q < n; ++q) cur[q] = g.add_input(static_cast<int>(q));

    auto attach = [&](size_t q, size_t vid) {
        g.add_edge(cur[q], vid, pend[q]);
        cur[q] = vid;
        pend[q] = EdgeType::simple;
    };

    auto emit = [&](qcir::Gate const& gate, auto&& self) -> void {
        if (gate.kind == "h") {
            size_t q = gate.qubits[0];
            pend[q] = compose_edges(pend[q], EdgeType::hadamard);
            return;
        }
        if (gate.kind == "y") {
            size_t q = gate.qubits[0];
            attach(q, g.add_vertex(VertexType::x, qcir::Phase{1, 1}, static_cast<int>(q)));
            attach(q, g.add_vertex(VertexType::z, qcir::Phase{1, 1}, static_cast<int>(q)));
            return;
        }
        if (gate.kind == "cx") {
            size_t qc = gate.qubits[0], qt = gate.qubits[1];
            size_t vc = g.add_vertex(VertexType::z, {}, static_cast<int>(qc));
            size_t vt = g.add_vertex(VertexType::x, {}, static_cast<int>(qt));
            attach(qc, vc);
            attach(qt, vt);
            g.add_edge(vc, vt, EdgeType::simple);
            return;
        }
        if (gate.kind == "cz") {
            size_t qa = gate.qubits[0], qb = gate.qubits[1];
            size_t va = g.add_vertex(VertexType::z, {}, static_cast<int>(qa));
            size_t vb = g.add_vertex(VertexType::z, {}, static_cast<int>(qb));
            attach(qa, va);
            attach(qb, vb);
            g.add_edge(va, vb, EdgeType::hadamard);
            return;
        }
        if (gate.kind == "swap") {
            size_t qa = gate.qubits[0], qb = gate.qubits[1];
            std::swap(cur[qa], cur[qb]);
            std::swap(pend[qa], pend[qb]);
            return;
        }
        if (gate.kind == "ccx" || gate.kind == "ccz" || gate.kind == "mcx" || gate.kind == "mcz") {
            qcir::QuantumCircuit tmp{n};
            tmp.add_gate(gate.kind, gate.qubits, gate.param);
            auto expanded = qcir::decompose_multi_control(tmp);
            for (auto const& sub : expanded.gates()) self(sub, self);
            return;
        }
        auto axis = qcir::detail::rotation_axis(gate);
        if (axis == qcir::detail::Axis::z) {
            size_t q = gate.qubits[0];
            attach(q, g.add_vertex(VertexType::z, qcir::detail::rotation_angle(gate), static_cast<int>(q)));
            return;
        }
        if (axis == qcir::detail::Axis::x) {
            size_t q = gate.qubits[0];
            attach(q, g.add_vertex(VertexType::x, qcir::detail::rotation_angle(gate), static_cast<int>(q)));
            return;
        }
        throw std::invalid_argument(fmt::format("zx conversion does not support gate kind '{}'", gate.kind));
    };

    for (auto const& gate : c.gates()) emit(gate, emit);
    for (size_t q = 0; q < n; ++q) {
        size_t out = g.add_output(static_cast<int>(q));
        g.add_edge(cur[q], out, pend[q]);
    }
    return g;
}

}  // namespace qcw::zx
