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

#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "qcw/zx/diagram.hpp"

namespace qcw::zx {

/// Spider with no boundary neighbor; rewrite rules act only on these.
inline bool is_interior(ZXDiagram const& g, size_t id) {
    auto const& v = g.vertex(id);
    if (!v.is_spider()) return false;
    for (auto const& [w, t] : v.neighbors)
        if (g.vertex(w).is_boundary()) return false;
    return true;
}

/// Degree-1 spider hanging off another spider (the phase-carrying end of a gadget).
inline bool is_gadget_leg(ZXDiagram const& g, size_t id) {
    auto const& v = g.vertex(id);
    return v.is_spider() && v.neighbors.size() == 1 &&
           g.vertex(v.neighbors.begin()->first).is_spider();
}

/// Spider with a gadget leg attached.
inline bool is_gadget_root(ZXDiagram const& g, size_t id) {
    for (auto const& [w, t] : g.vertex(id).neighbors)
        if (is_gadget_leg(g, w)) return true;
    return false;
}

/// Restores simple boundary edges by inserting identity spiders where needed.
inline void normalize_boundaries(ZXDiagram& g) {
    auto fix = [&](size_t b) {
        auto const& v = g.vertex(b);
        if (v.neighbors.size() != 1)
            throw std::logic_error("normalize_boundaries: boundary degree must be one");
        auto [w, t] = *v.neighbors.begin();
        if (t != EdgeType::simple) g.insert_identity(b, w, EdgeType::simple);
    };
    for (size_t b : g.inputs()) fix(b);
    for (size_t b : g.outputs()) fix(b);
}

/**
 * @brief Converts any diagram to graph-like form.
 *
 * Color-changes every x-spider (toggling its incident edge types), fuses
 * across simple spider-spider edges, and normalizes boundary edges. Afterward
 * all spiders are z, spider-spider edges are hadamard, and boundary edges are
 * simple.
 */
inline void to_graph_like(ZXDiagram& g) {
    std::vector<size_t> xs;
    for (auto const& [id, v] : g.vertices())
        if (v.type == VertexType::x) xs.push_back(id);
    for (size_t id : xs) {
        g.vertex(id).type = VertexType::z;
        std::vector<size_t> nbs;
        for (auto const& [w, t] : g.vertex(id).neighbors) nbs.push_back(w);
        for (size_t w : nbs)
            g.set_edge_type(id, w, compose_edges(*g.edge_type(id, w), EdgeType::hadamard));
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto const& [u, v, t] : g.edges()) {
            if (!g.has_vertex(u) || !g.has_vertex(v)) continue;
            auto cur = g.edge_type(u, v);
            if (!cur || *cur != EdgeType::simple) continue;
            if (!g.vertex(u).is_spider() || !g.vertex(v).is_spider()) continue;
            g.remove_edge(u, v);
            g.fuse_into(u, v);
            changed = true;
        }
    }
    normalize_boundaries(g);
}

/// Removes scalar (degree-0) spiders and phase-0 degree-2 spiders, composing
/// the two wire segments. Returns whether anything changed.
inline bool id_removal_pass(ZXDiagram& g) {
    bool changed = false;
    std::vector<size_t> ids;
    for (auto const& [id, v] : g.vertices()) ids.push_back(id);
    for (size_t id : ids) {
        if (!g.has_vertex(id)) continue;
        auto const& v = g.vertex(id);
        if (!v.is_spider()) continue;
        if (v.neighbors.empty()) {
            g.remove_vertex(id);
            changed = true;
            continue;
        }
        if (!v.phase.is_zero() || v.neighbors.size() != 2) continue;
        auto it = v.neighbors.begin();
        auto [a, t1] = *it;
        ++it;
        auto [b, t2] = *it;
        g.remove_vertex(id);
        g.add_edge_resolved(a, b, compose_edges(t1, t2));
        changed = true;
    }
    return changed;
}

/**
 * @brief Local complementation: removes an interior +-pi/2 spider.
 *
 * Complements the edge set among its neighbors and subtracts its phase from
 * each of them. Valid up to scalar.
 */
inline bool lcomp_pass(ZXDiagram& g) {
    bool changed = false;
    std::vector<size_t> ids;
    for (auto const& [id, v] : g.vertices()) ids.push_back(id);
    for (size_t id : ids) {
        if (!g.has_vertex(id)) continue;
        auto const& v = g.vertex(id);
        if (!v.is_spider() || v.phase.denominator() != 2) continue;
        if (!is_interior(g, id)) continue;
        std::vector<size_t> nbs;
        bool all_h = true;
        for (auto const& [w, t] : v.neighbors) {
            nbs.push_back(w);
            if (t != EdgeType::hadamard) all_h = false;
        }
        if (!all_h) continue;
        for (size_t i = 0; i < nbs.size(); ++i)
            for (size_t j = i + 1; j < nbs.size(); ++j) {
                if (g.edge_type(nbs[i], nbs[j]))
                    g.remove_edge(nbs[i], nbs[j]);
                else
                    g.add_edge(nbs[i], nbs[j], EdgeType::hadamard);
            }
        qcir::Phase p = v.phase;
        for (size_t w : nbs) g.vertex(w).phase -= p;
        g.remove_vertex(id);
        changed = true;
    }
    return changed;
}

/**
 * @brief Pivot along the hadamard edge of two interior Pauli spiders.
 *
 * Complements edges between the exclusive-u, exclusive-v, and shared neighbor
 * classes, propagates the two phases, and removes both spiders. The caller
 * guarantees eligibility.
 */
inline void apply_pivot(ZXDiagram& g, size_t u, size_t v) {
    qcir::Phase pu = g.vertex(u).phase, pv = g.vertex(v).phase;
    std::set<size_t> nu, nv;
    for (auto const& [w, t] : g.vertex(u).neighbors)
        if (w != v) nu.insert(w);
    for (auto const& [w, t] : g.vertex(v).neighbors)
        if (w != u) nv.insert(w);
    std::vector<size_t> a_only, b_only, both;
    for (size_t w : nu) (nv.count(w) ? both : a_only).push_back(w);
    for (size_t w : nv)
        if (!nu.count(w)) b_only.push_back(w);

    auto toggle = [&](size_t a, size_t b) {
        if (g.edge_type(a, b))
            g.remove_edge(a, b);
        else
            g.add_edge(a, b, EdgeType::hadamard);
    };
    for (size_t a : a_only)
        for (size_t b : b_only) toggle(a, b);
    for (size_t a : a_only)
        for (size_t c : both) toggle(a, c);
    for (size_t b : b_only)
        for (size_t c : both) toggle(b, c);

    for (size_t a : a_only) g.vertex(a).phase += pv;
    for (size_t b : b_only) g.vertex(b).phase += pu;
    for (size_t c : both) g.vertex(c).phase += pu + pv + qcir::Phase{1, 1};
    g.remove_vertex(u);
    g.remove_vertex(v);
}

namespace detail {

/// Pivot candidates must be interior Pauli spiders that are neither gadget
/// legs nor gadget roots.
inline bool pivot_eligible(ZXDiagram const& g, size_t id, bool require_pauli) {
    auto const& v = g.vertex(id);
    if (!v.is_spider()) return false;
    if (require_pauli && !v.phase.is_pauli()) return false;
    if (!is_interior(g, id)) return false;
    if (v.neighbors.size() < 2) return false;
    if (is_gadget_root(g, id)) return false;
    for (auto const& [w, t] : v.neighbors)
        if (t != EdgeType::hadamard) return false;
    return true;
}

}  // namespace detail

/// Pivots every eligible interior Pauli-Pauli hadamard edge once.
inline bool pivot_pass(ZXDiagram& g) {
    bool changed = false;
    for (auto const& [u, v, t0] : g.edges()) {
        if (!g.has_vertex(u) || !g.has_vertex(v)) continue;
        auto t = g.edge_type(u, v);
        if (!t || *t != EdgeType::hadamard) continue;
        if (!detail::pivot_eligible(g, u, true) || !detail::pivot_eligible(g, v, true)) continue;
        apply_pivot(g, u, v);
        changed = true;
    }
    return changed;
}

/**
 * @brief Pivot that first unfuses a non-Clifford phase into a fresh gadget.
 *
 * For a hadamard edge between an interior Pauli spider and an interior
 * non-Pauli spider, moves the non-Pauli phase onto a new leg-root pair and
 * pivots the now-Pauli edge.
 */
inline bool pivot_gadget_pass(ZXDiagram& g) {
    bool changed = false;
    for (auto const& [e_u, e_v, t0] : g.edges()) {
        if (!g.has_vertex(e_u) || !g.has_vertex(e_v)) continue;
        auto t = g.edge_type(e_u, e_v);
        if (!t || *t != EdgeType::hadamard) continue;
        size_t u = e_u, v = e_v;
        if (!g.vertex(u).phase.is_pauli()) std::swap(u, v);
        if (!g.vertex(u).phase.is_pauli()) continue;
        if (g.vertex(v).phase.is_pauli()) continue;  // plain pivot territory
        if (!detail::pivot_eligible(g, u, true) || !detail::pivot_eligible(g, v, false)) continue;
        qcir::Phase alpha = g.vertex(v).phase;
        g.vertex(v).phase = {};
        size_t root = g.add_vertex(VertexType::z, {}, -2);
        size_t leg = g.add_vertex(VertexType::z, alpha, -2);
        g.add_edge(v, root, EdgeType::hadamard);
        g.add_edge(root, leg, EdgeType::hadamard);
        apply_pivot(g, u, v);
        changed = true;
    }
    return changed;
}

/**
 * @brief Phase-gadget housekeeping: root-sign normalization, Pauli-phase
 * absorption, and same-support fusion.
 */
inline bool gadget_pass(ZXDiagram& g) {
    bool changed = false;
    std::vector<size_t> ids;
    for (auto const& [id, v] : g.vertices()) ids.push_back(id);
    std::map<std::vector<size_t>, size_t> seen;  // support -> surviving leg
    for (size_t id : ids) {
        if (!g.has_vertex(id) || !is_gadget_leg(g, id)) continue;
        size_t root = g.vertex(id).neighbors.begin()->first;
        if (!is_interior(g, root)) continue;
        auto& rv = g.vertex(root);
        if (rv.neighbors.size() == 1) {  // isolated pair contributes only a scalar
            g.remove_vertex(id);
            g.remove_vertex(root);
            changed = true;
            continue;
        }
        if (rv.phase == qcir::Phase{1, 1}) {
            rv.phase = {};
            g.vertex(id).phase = -g.vertex(id).phase;
            changed = true;
        }
        if (!rv.phase.is_zero()) continue;
        qcir::Phase alpha = g.vertex(id).phase;
        std::vector<size_t> support;
        for (auto const& [w, t] : rv.neighbors)
            if (w != id) support.push_back(w);
        if (alpha.is_zero()) {
            g.remove_vertex(id);
            g.remove_vertex(root);
            changed = true;
            continue;
        }
        if (alpha == qcir::Phase{1, 1}) {  // parity-pi gadget = z on each support spider
            for (size_t s : support) g.vertex(s).phase += qcir::Phase{1, 1};
            g.remove_vertex(id);
            g.remove_vertex(root);
            changed = true;
            continue;
        }
        auto it = seen.find(support);
        if (it == seen.end()) {
            seen.emplace(std::move(support), id);
            continue;
        }
        g.vertex(it->second).phase += alpha;
        g.remove_vertex(id);
        g.remove_vertex(root);
        changed = true;
    }
    return changed;
}

/**
 * @brief Full graph-like reduction.
 *
 * Interleaves identity removal, local complementation, and pivoting to a
 * fixpoint, then alternates gadget housekeeping and gadget-creating pivots
 * until nothing fires. With early_stop only the first fixpoint runs, leaving
 * non-Clifford phases where they sit.
 */
inline void full_reduce(ZXDiagram& g, bool early_stop = false) {
    to_graph_like(g);
    auto interior_clifford = [&] {
        for (int guard = 0;; ++guard) {
            if (guard > 10000) throw std::logic_error("full_reduce: interior loop did not converge");
            bool any = id_removal_pass(g);
            any |= lcomp_pass(g);
            any |= pivot_pass(g);
            if (!any) break;
        }
    };
    interior_clifford();
    if (!early_stop) {
        for (int guard = 0;; ++guard) {
            if (guard > 10000) throw std::logic_error("full_reduce: gadget loop did not converge");
            bool any = gadget_pass(g);
            any |= pivot_gadget_pass(g);
            if (!any) break;
            interior_clifford();
        }
    }
    normalize_boundaries(g);
}

}  // namespace qcw::zx
