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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "qcw/device/device.hpp"
#include "qcw/qcir/circuit.hpp"

namespace qcw::device {

/**
 * @brief Injective logical-to-physical assignment with its partial inverse.
 */
class Placement {
public:
    Placement(size_t n_logical, size_t n_physical) : _log_to_phys(n_logical), _phys_to_log(n_physical) {
        if (n_logical > n_physical)
            throw std::invalid_argument("Placement: more logical than physical qubits");
    }

    static Placement identity(size_t n_logical, size_t n_physical) {
        Placement p{n_logical, n_physical};
        for (size_t l = 0; l < n_logical; ++l) {
            p._log_to_phys[l] = l;
            p._phys_to_log[l] = l;
        }
        return p;
    }

    size_t n_logical() const { return _log_to_phys.size(); }
    size_t n_physical() const { return _phys_to_log.size(); }
    size_t physical(size_t l) const { return _log_to_phys.at(l); }
    std::optional<size_t> logical_at(size_t p) const { return _phys_to_log.at(p); }

    /// Exchanges the contents of two physical qubits.
    void apply_swap(size_t pa, size_t pb) {
        auto la = _phys_to_log.at(pa), lb = _phys_to_log.at(pb);
        std::swap(_phys_to_log[pa], _phys_to_log[pb]);
        if (la) _log_to_phys[*la] = pb;
        if (lb) _log_to_phys[*lb] = pa;
    }

    bool consistent() const {
        std::set<size_t> seen;
        for (size_t l = 0; l < _log_to_phys.size(); ++l) {
            size_t p = _log_to_phys[l];
            if (p >= _phys_to_log.size() || !seen.insert(p).second) return false;
            if (!_phys_to_log[p] || *_phys_to_log[p] != l) return false;
        }
        for (size_t p = 0; p < _phys_to_log.size(); ++p)
            if (_phys_to_log[p] && _log_to_phys.at(*_phys_to_log[p]) != p) return false;
        return true;
    }

    bool operator==(Placement const& o) const {
        return _log_to_phys == o._log_to_phys && _phys_to_log == o._phys_to_log;
    }

private:
    std::vector<size_t> _log_to_phys;
    std::vector<std::optional<size_t>> _phys_to_log;
};

enum class RouteObjective { swaps, depth };
enum class RouteScheduler { heuristic, search };

struct RouteOptions {
    RouteObjective objective = RouteObjective::swaps;
    RouteScheduler scheduler = RouteScheduler::heuristic;
    size_t beam_width = 4;
    size_t beam_depth = 2;
    bool decompose_swaps = false;  // emit inserted SWAPs as 3 CX
    uint64_t seed = 0;             // reserved: routing is deterministic
};

struct RoutingResult {
    qcir::QuantumCircuit mapped_circuit{0};
    Placement initial_placement{0, 0};
    Placement final_placement{0, 0};
    size_t swap_count = 0;
    std::vector<size_t> inserted_swap_positions;  // gate indices of inserted SWAPs
    size_t mapped_depth = 0;
    size_t mapped_delay = 0;
};

namespace detail {

/// Dependency frontier: index of the first unemitted gate per logical qubit.
struct GateFrontier {
    explicit GateFrontier(qcir::QuantumCircuit const& c) : _next_of_qubit(c.n_qubits(), 0), _c{c} {
        _done.assign(c.size(), false);
        refill();
    }

    std::vector<size_t> const& ready() const { return _ready; }
    bool finished() const { return _emitted == _c.size(); }

    void emit(size_t gate_index) {
        _done[gate_index] = true;
        ++_emitted;
        refill();
    }

private:
    void refill() {
        _ready.clear();
        std::vector<std::optional<size_t>> head(_next_of_qubit.size());
        for (size_t q = 0; q < head.size(); ++q) {
            size_t i = _next_of_qubit[q];
            while (i < _c.size()) {
                auto const& qs = _c.gates()[i].qubits;
                if (!_done[i] && std::find(qs.begin(), qs.end(), q) != qs.end()) break;
                ++i;
            }
            _next_of_qubit[q] = i;
            if (i < _c.size()) head[q] = i;
        }
        std::set<size_t> seen;
        for (size_t q = 0; q < head.size(); ++q) {
            if (!head[q]) continue;
            size_t i = *head[q];
            bool all_heads = true;
            for (size_t r : _c.gates()[i].qubits)
                if (!head[r] || *head[r] != i) all_heads = false;
            if (all_heads && seen.insert(i).second) _ready.push_back(i);
        }
        std::sort(_ready.begin(), _ready.end());
    }

    std::vector<size_t> _next_of_qubit;
    qcir::QuantumCircuit const& _c;
    std::vector<bool> _done;
    std::vector<size_t> _ready;
    size_t _emitted = 0;
};

/// Total hop distance of the blocked two-qubit frontier under a placement.
inline size_t frontier_distance(qcir::QuantumCircuit const& c, std::vector<size_t> const& ready,
                                Placement const& pl, Device const& d) {
    size_t total = 0;
    for (size_t i : ready) {
        auto const& qs = c.gates()[i].qubits;
        if (qs.size() == 2) total += d.distance(pl.physical(qs[0]), pl.physical(qs[1]));
    }
    return total;
}

/// Candidate swap edges: device edges touching a frontier gate's qubit.
inline std::vector<std::pair<size_t, size_t>> candidate_swaps(qcir::QuantumCircuit const& c,
                                                              std::vector<size_t> const& ready,
                                                              Placement const& pl, Device const& d) {
    std::set<size_t> active;
    for (size_t i : ready) {
        auto const& qs = c.gates()[i].qubits;
        if (qs.size() == 2)
            for (size_t q : qs) active.insert(pl.physical(q));
    }
    std::set<std::pair<size_t, size_t>> out;
    for (auto const& [u, v] : d.edges())
        if (active.count(u) || active.count(v)) out.insert({u, v});
    return {out.begin(), out.end()};
}

/**
 * @brief Bounded beam search over swap sequences; returns the best first swap.
 *
 * Scores a state by the frontier distance it reaches, ties by fewer swaps,
 * then by the lexicographically smallest swap sequence.
 */
inline std::pair<size_t, size_t> pick_swap_beam(qcir::QuantumCircuit const& c,
                                                std::vector<size_t> const& ready, Placement const& pl,
                                                Device const& d, size_t width, size_t depth) {
    struct State {
        Placement placement;
        std::vector<std::pair<size_t, size_t>> path;
        size_t dist;
    };
    auto better = [](State const& a, State const& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.path.size() != b.path.size()) return a.path.size() < b.path.size();
        return a.path < b.path;
    };
    std::vector<State> beam{{pl, {}, frontier_distance(c, ready, pl, d)}};
    State best = beam.front();
    for (size_t level = 0; level < std::max<size_t>(depth, 1); ++level) {
        std::vector<State> expanded;
        for (auto const& st : beam) {
            for (auto const& e : candidate_swaps(c, ready, st.placement, d)) {
                State nxt = st;
                nxt.placement.apply_swap(e.first, e.second);
                nxt.path.push_back(e);
                nxt.dist = frontier_distance(c, ready, nxt.placement, d);
                expanded.push_back(std::move(nxt));
            }
        }
        if (expanded.empty()) break;
        std::sort(expanded.begin(), expanded.end(), better);
        if (expanded.size() > width)
            expanded.erase(expanded.begin() + static_cast<ptrdiff_t>(width), expanded.end());
        beam = std::move(expanded);
        if (better(beam.front(), best)) best = beam.front();
    }
    if (best.path.empty()) {
        // no candidate improved; fall back to the first candidate
        auto cands = candidate_swaps(c, ready, pl, d);
        if (cands.empty()) throw std::logic_error("router: blocked frontier with no candidate swaps");
        return cands.front();
    }
    return best.path.front();
}

/// First swap along a shortest path for the lowest blocked frontier gate.
inline std::pair<size_t, size_t> pick_swap_greedy_path(qcir::QuantumCircuit const& c, size_t gate_index,
                                                       Placement const& pl, Device const& d) {
    auto const& qs = c.gates()[gate_index].qubits;
    size_t pa = pl.physical(qs[0]), pb = pl.physical(qs[1]);
    size_t dist = d.distance(pa, pb);
    std::pair<size_t, size_t> best{SIZE_MAX, SIZE_MAX};
    auto consider = [&](size_t from, size_t to, size_t other) {
        if (d.distance(to, other) + 1 != dist) return;  // not along a shortest path
        std::pair<size_t, size_t> e{std::min(from, to), std::max(from, to)};
        if (e < best) best = e;
    };
    for (size_t u : d.neighbors(pa)) consider(pa, u, pb);
    for (size_t v : d.neighbors(pb)) consider(pb, v, pa);
    if (best.first == SIZE_MAX) throw std::logic_error("router: no shortest-path step found");
    return best;
}

}  // namespace detail

/**
 * @brief Inserts SWAPs so every two-qubit gate acts on a device edge.
 *
 * Identity initial placement. objective=swaps walks each blocked gate along
 * a min-distance path (ties to the lowest qubit index); objective=depth
 * emits every currently executable frontier gate first and picks the swap
 * that most reduces the whole frontier's distance. scheduler=search replaces
 * the one-step choice with a bounded beam over swap sequences.
 */
inline RoutingResult route(qcir::QuantumCircuit const& c, Device const& d,
                           RouteOptions options = {}) {
    if (c.n_qubits() > d.n_physical())
        throw std::invalid_argument(fmt::format("route: too many logical qubits ({} > {})",
                                                c.n_qubits(), d.n_physical()));
    for (auto const& g : c.gates())
        if (g.qubits.size() > 2)
            throw std::invalid_argument(
                fmt::format("route: unsupported gate arity {} ('{}'); decompose first",
                            g.qubits.size(), g.kind));

    RoutingResult result;
    result.mapped_circuit = qcir::QuantumCircuit{d.n_physical()};
    result.initial_placement = Placement::identity(c.n_qubits(), d.n_physical());
    Placement pl = result.initial_placement;

    auto emit_swap = [&](std::pair<size_t, size_t> e) {
        result.inserted_swap_positions.push_back(result.mapped_circuit.size());
        if (options.decompose_swaps) {
            result.mapped_circuit.cx(e.first, e.second);
            result.mapped_circuit.cx(e.second, e.first);
            result.mapped_circuit.cx(e.first, e.second);
        } else {
            result.mapped_circuit.swap(e.first, e.second);
        }
        pl.apply_swap(e.first, e.second);
        ++result.swap_count;
    };
    auto emit_gate = [&](qcir::Gate const& g) {
        std::vector<size_t> phys;
        for (size_t q : g.qubits) phys.push_back(pl.physical(q));
        result.mapped_circuit.add_gate(g.kind, phys, g.param);
    };

    detail::GateFrontier frontier{c};
    while (!frontier.finished()) {
        bool emitted = false;
        for (size_t i : frontier.ready()) {
            auto const& g = c.gates()[i];
            if (g.qubits.size() == 2 && !d.adjacent(pl.physical(g.qubits[0]), pl.physical(g.qubits[1])))
                continue;
            emit_gate(g);
            frontier.emit(i);
            emitted = true;
            break;  // the frontier list is stale after emission
        }
        if (emitted) continue;

        auto const& ready = frontier.ready();
        std::pair<size_t, size_t> chosen{SIZE_MAX, SIZE_MAX};
        if (options.scheduler == RouteScheduler::search) {
            chosen = detail::pick_swap_beam(c, ready, pl, d, options.beam_width, options.beam_depth);
        } else if (options.objective == RouteObjective::swaps) {
            chosen = detail::pick_swap_greedy_path(c, ready.front(), pl, d);
        } else {
            // depth objective: the swap that most reduces the whole frontier
            size_t best_dist = SIZE_MAX;
            for (auto const& e : detail::candidate_swaps(c, ready, pl, d)) {
                Placement trial = pl;
                trial.apply_swap(e.first, e.second);
                size_t dist = detail::frontier_distance(c, ready, trial, d);
                if (dist < best_dist) {
                    best_dist = dist;
                    chosen = e;
                }
            }
            if (best_dist >= detail::frontier_distance(c, ready, pl, d))
                chosen = detail::pick_swap_greedy_path(c, ready.front(), pl, d);  // guarantee progress
        }
        emit_swap(chosen);
    }

    result.final_placement = pl;
    auto stats = result.mapped_circuit.statistics();
    result.mapped_depth = stats.depth;
    result.mapped_delay = stats.delay;
    return result;
}

/**
 * @brief Checks edge adjacency of all two-qubit gates and that replaying the
 * inserted SWAPs from the initial placement reaches the final placement.
 */
inline bool validate_mapping(RoutingResult const& r, Device const& d) {
    if (r.mapped_circuit.n_qubits() != d.n_physical()) return false;
    if (!r.initial_placement.consistent() || !r.final_placement.consistent()) return false;
    for (auto const& g : r.mapped_circuit.gates()) {
        if (g.qubits.size() > 2) return false;
        if (g.qubits.size() == 2 && !d.adjacent(g.qubits[0], g.qubits[1])) return false;
    }
    Placement replay = r.initial_placement;
    std::set<size_t> inserted(r.inserted_swap_positions.begin(), r.inserted_swap_positions.end());
    for (size_t pos : inserted) {
        if (pos >= r.mapped_circuit.size()) return false;
        auto const& g = r.mapped_circuit.gates()[pos];
        if (g.qubits.size() != 2) return false;
        replay.apply_swap(g.qubits[0], g.qubits[1]);
    }
    return replay == r.final_placement;
}

/**
 * @brief Pulls the mapped circuit back to logical qubits.
 *
 * Inserted SWAPs are treated as relabelings of the evolving placement and
 * emit nothing; every other gate's physical qubits are translated through
 * the placement current at its position.
 */
inline qcir::QuantumCircuit unmap(RoutingResult const& r) {
    qcir::QuantumCircuit out{r.initial_placement.n_logical()};
    Placement pl = r.initial_placement;
    std::set<size_t> inserted(r.inserted_swap_positions.begin(), r.inserted_swap_positions.end());
    size_t pending_cx_of_swap = 0;  // decomposed inserted SWAPs occupy 3 slots
    for (size_t i = 0; i < r.mapped_circuit.size(); ++i) {
        auto const& g = r.mapped_circuit.gates()[i];
        if (inserted.count(i)) {
            if (g.kind == "swap") {
                pl.apply_swap(g.qubits[0], g.qubits[1]);
            } else {
                pl.apply_swap(g.qubits[0], g.qubits[1]);
                pending_cx_of_swap = 2;  // two more CX belong to this SWAP
            }
            continue;
        }
        if (pending_cx_of_swap > 0) {
            --pending_cx_of_swap;
            continue;
        }
        std::vector<size_t> logical;
        for (size_t p : g.qubits) {
            auto l = pl.logical_at(p);
            if (!l) throw std::logic_error("unmap: gate on a physical qubit holding no logical qubit");
            logical.push_back(*l);
        }
        out.add_gate(g.kind, logical, g.param);
    }
    return out;
}

}  // namespace qcw::device
