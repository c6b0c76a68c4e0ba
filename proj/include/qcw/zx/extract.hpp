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

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qcw/gf2/boolean_matrix.hpp"
#include "qcw/qcir/circuit.hpp"
#include "qcw/zx/diagram.hpp"
#include "qcw/zx/simplify.hpp"

namespace qcw::zx {

/// How the extractor picks the gadget-removing pivot when no wire can advance:
/// naive takes the first candidate, min_cz simulates each one and keeps the
/// candidate leaving the fewest frontier-frontier edges (= pending cz gates).
enum class ExtractStrategy { naive, min_cz };

namespace detail {

struct RowOp {
    size_t src, dst;
};

/// Gauss-Jordan over GF(2) using row additions only (no swaps); row order is
/// preserved so every op maps one-to-one onto a cnot.
inline std::vector<RowOp> gauss_jordan_row_ops(gf2::BooleanMatrix m) {
    std::vector<RowOp> ops;
    std::vector<bool> used(m.num_rows(), false);
    for (size_t col = 0; col < m.num_cols(); ++col) {
        size_t pivot = m.num_rows();
        for (size_t r = 0; r < m.num_rows(); ++r)
            if (!used[r] && m.get(r, col)) {
                pivot = r;
                break;
            }
        if (pivot == m.num_rows()) continue;
        used[pivot] = true;
        for (size_t r = 0; r < m.num_rows(); ++r) {
            if (r == pivot || !m.get(r, col)) continue;
            m.xor_row(r, pivot);
            ops.push_back({pivot, r});
        }
    }
    return ops;
}

}  // namespace detail

/**
 * @brief Extracts an equivalent circuit from a diagram, consuming a copy.
 *
 * Works output-side inward: absorbs hadamards and phases at the frontier,
 * turns frontier-frontier edges into cz gates, advances wires whose frontier
 * connects to a single interior spider (after biadjacency row reduction whose
 * row additions become cnots), and breaks deadlocks by pivoting a phase gadget
 * into the frontier. Collected gates are reversed at the end and a final
 * wire permutation becomes swaps at the circuit start.
 *
 * The diagram must be a well-formed open graph with equally many inputs and
 * outputs; it is normalized to graph-like form first. Throws std::logic_error
 * if no progress is possible (a diagram without causal flow).
 */
inline qcir::QuantumCircuit extract_circuit(ZXDiagram g,
                                            ExtractStrategy strategy = ExtractStrategy::min_cz) {
    to_graph_like(g);
    size_t n = g.outputs().size();
    if (g.inputs().size() != n)
        throw std::invalid_argument("extract_circuit: diagram needs equally many inputs and outputs");

    std::vector<qcir::Gate> rev;  // output-to-input order
    auto emit = [&](std::string kind, std::vector<size_t> qs, qcir::Phase p = {}) {
        rev.push_back(qcir::Gate{std::move(kind), std::move(qs), p});
    };

    std::vector<bool> closed(n, false);
    auto partner = [&](size_t q) -> std::pair<size_t, EdgeType> {
        auto const& ob = g.vertex(g.outputs()[q]);
        if (ob.neighbors.size() != 1)
            throw std::logic_error("extract_circuit: output boundary degree must be one");
        return *ob.neighbors.begin();
    };
    auto is_input = [&](size_t id) {
        return std::find(g.inputs().begin(), g.inputs().end(), id) != g.inputs().end();
    };
    auto frontier_of = [&](size_t q) { return partner(q).first; };

    for (int guard = 0;; ++guard) {
        if (guard > 100000) throw std::logic_error("extract_circuit: no progress");
        bool progress = false;

        // A: settle each open wire head: absorb hadamards and phases, close
        // finished wires, and keep the wire->frontier map injective.
        std::map<size_t, size_t> owner;  // frontier vertex -> wire
        for (size_t q = 0; q < n; ++q) {
            if (closed[q]) continue;
            size_t o = g.outputs()[q];
            for (;;) {
                auto [v, t] = partner(q);
                if (t == EdgeType::hadamard) {
                    emit("h", {q});
                    g.set_edge_type(o, v, EdgeType::simple);
                    progress = true;
                }
                if (g.vertex(v).is_boundary()) {
                    closed[q] = true;
                    progress = true;
                    break;
                }
                if (!g.vertex(v).phase.is_zero()) {
                    emit("rz", {q}, g.vertex(v).phase);
                    g.vertex(v).phase = {};
                    progress = true;
                }
                if (g.vertex(v).neighbors.size() == 2) {
                    auto it = g.vertex(v).neighbors.begin();
                    auto [w1, t1] = *it;
                    ++it;
                    auto [w2, t2] = *it;
                    size_t other = w1 == o ? w2 : w1;
                    EdgeType ot = w1 == o ? t2 : t1;
                    if (g.vertex(other).is_boundary()) {
                        // o - v - input: drop the identity and re-examine
                        g.remove_vertex(v);
                        g.add_edge(o, other, ot);
                        progress = true;
                        continue;
                    }
                }
                auto taken = owner.find(v);
                if (taken != owner.end()) {
                    // two outputs on one spider: split so each wire owns a head
                    g.insert_identity(o, v, EdgeType::hadamard);
                    progress = true;
                    continue;
                }
                owner.emplace(v, q);
                break;
            }
        }
        if (std::all_of(closed.begin(), closed.end(), [](bool b) { return b; })) break;

        std::vector<size_t> open;
        for (size_t q = 0; q < n; ++q)
            if (!closed[q]) open.push_back(q);

        // B: frontier-frontier edges are cz gates
        for (size_t a = 0; a < open.size(); ++a) {
            for (size_t b = a + 1; b < open.size(); ++b) {
                size_t fa = frontier_of(open[a]), fb = frontier_of(open[b]);
                if (fa == fb || !g.edge_type(fa, fb)) continue;
                g.remove_edge(fa, fb);
                emit("cz", {open[a], open[b]});
                progress = true;
            }
        }

        // C: unfuse inputs away from the frontier so the biadjacency sees
        // spiders only
        for (size_t q : open) {
            size_t f = frontier_of(q);
            std::vector<std::pair<size_t, EdgeType>> input_edges;
            for (auto const& [w, t] : g.vertex(f).neighbors)
                if (g.vertex(w).is_boundary() && is_input(w)) input_edges.emplace_back(w, t);
            for (auto const& [i, t] : input_edges)
                g.insert_identity(i, f, compose_edges(t, EdgeType::hadamard));
        }

        // D: biadjacency of frontiers x adjacent interior spiders
        std::vector<size_t> cols;
        {
            std::set<size_t> col_set;
            for (size_t q : open)
                for (auto const& [w, t] : g.vertex(frontier_of(q)).neighbors)
                    if (g.vertex(w).is_spider()) col_set.insert(w);
            cols.assign(col_set.begin(), col_set.end());
        }
        auto advanceable = [&](size_t q) {
            std::vector<size_t> interior;
            for (auto const& [w, t] : g.vertex(frontier_of(q)).neighbors)
                if (g.vertex(w).is_spider()) interior.push_back(w);
            return interior.size() == 1 && !is_gadget_root(g, interior[0]);
        };
        bool some_single = false;
        for (size_t q : open)
            if (advanceable(q)) some_single = true;

        if (!some_single && !cols.empty()) {
            gf2::BooleanMatrix m(open.size(), cols.size());
            for (size_t r = 0; r < open.size(); ++r)
                for (size_t c = 0; c < cols.size(); ++c)
                    if (g.edge_type(frontier_of(open[r]), cols[c])) m.set(r, c, true);
            for (auto const& op : detail::gauss_jordan_row_ops(m)) {
                size_t fs = frontier_of(open[op.src]), fd = frontier_of(open[op.dst]);
                for (size_t c : cols) {
                    bool s = g.edge_type(fs, c).has_value();
                    bool d = g.edge_type(fd, c).has_value();
                    if (s && d)
                        g.remove_edge(fd, c);
                    else if (s && !d)
                        g.add_edge(fd, c, EdgeType::hadamard);
                }
                emit("cx", {open[op.dst], open[op.src]});
            }
        }

        // E: advance wires whose frontier touches exactly one interior spider
        // that is not a gadget root
        for (size_t q : open) {
            size_t f = frontier_of(q);
            std::vector<size_t> interior;
            for (auto const& [w, t] : g.vertex(f).neighbors)
                if (g.vertex(w).is_spider()) interior.push_back(w);
            if (interior.size() != 1 || is_gadget_root(g, interior[0])) continue;
            if (g.vertex(f).neighbors.size() != 2) continue;  // still wired to a boundary
            size_t w = interior[0];
            g.remove_vertex(f);
            g.add_edge(g.outputs()[q], w, EdgeType::hadamard);
            progress = true;
        }
        if (progress) continue;

        // F: stuck on gadgets: pivot one into the frontier
        std::vector<std::pair<size_t, size_t>> candidates;  // (wire, root)
        {
            std::set<size_t> frontier_set;
            for (size_t q : open) frontier_set.insert(frontier_of(q));
            for (size_t q : open)
                for (auto const& [w, t] : g.vertex(frontier_of(q)).neighbors)
                    if (g.vertex(w).is_spider() && is_gadget_root(g, w) && !frontier_set.count(w))
                        candidates.emplace_back(q, w);
        }
        if (candidates.empty()) throw std::logic_error("extract_circuit: stuck (no causal flow)");

        auto apply_gadget_pivot = [&](ZXDiagram& d, size_t q, size_t root) {
            size_t f = [&] {
                auto const& ob = d.vertex(d.outputs()[q]);
                return ob.neighbors.begin()->first;
            }();
            // the root may touch inputs directly; unfuse them first
            std::vector<std::pair<size_t, EdgeType>> input_edges;
            for (auto const& [w, t] : d.vertex(root).neighbors)
                if (d.vertex(w).is_boundary()) input_edges.emplace_back(w, t);
            for (auto const& [i, t] : input_edges)
                d.insert_identity(i, root, compose_edges(t, EdgeType::hadamard));
            d.insert_identity(d.outputs()[q], f, EdgeType::hadamard);
            apply_pivot(d, f, root);
        };

        size_t pick = 0;
        if (strategy == ExtractStrategy::min_cz && candidates.size() > 1) {
            size_t best = std::numeric_limits<size_t>::max();
            for (size_t k = 0; k < candidates.size(); ++k) {
                ZXDiagram sim = g;
                apply_gadget_pivot(sim, candidates[k].first, candidates[k].second);
                size_t cost = 0;
                std::vector<size_t> fs;
                for (size_t q : open) {
                    auto const& ob = sim.vertex(sim.outputs()[q]);
                    fs.push_back(ob.neighbors.begin()->first);
                }
                for (size_t a = 0; a < fs.size(); ++a)
                    for (size_t b = a + 1; b < fs.size(); ++b)
                        if (fs[a] != fs[b] && sim.edge_type(fs[a], fs[b])) ++cost;
                if (cost < best) {
                    best = cost;
                    pick = k;
                }
            }
        }
        apply_gadget_pivot(g, candidates[pick].first, candidates[pick].second);
    }

    // the residual diagram is a wire permutation; realize it with swaps at the
    // circuit start
    std::vector<size_t> perm(n);
    for (size_t q = 0; q < n; ++q) {
        auto [v, t] = partner(q);
        auto it = std::find(g.inputs().begin(), g.inputs().end(), v);
        if (it == g.inputs().end() || t != EdgeType::simple)
            throw std::logic_error("extract_circuit: residual diagram is not a permutation");
        perm[q] = static_cast<size_t>(it - g.inputs().begin());
    }
    qcir::QuantumCircuit out{n};
    std::vector<size_t> arr(n);
    for (size_t q = 0; q < n; ++q) arr[q] = q;
    for (size_t q = 0; q < n; ++q) {
        if (arr[q] == perm[q]) continue;
        size_t j = q + 1;
        while (j < n && arr[j] != perm[q]) ++j;
        if (j == n) throw std::logic_error("extract_circuit: malformed permutation");
        out.add_gate("swap", {q, j});
        std::swap(arr[q], arr[j]);
    }
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) out.add_gate(it->kind, it->qubits, it->param);
    return out;
}

}  // namespace qcw::zx
