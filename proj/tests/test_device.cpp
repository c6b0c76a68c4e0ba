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

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "qcw/device/device.hpp"
#include "qcw/device/router.hpp"
#include "qcw/qcir/circuit.hpp"
#include "qcw/tensor/unitary.hpp"

using namespace qcw;
using device::Device;
using device::Placement;
using device::RouteObjective;
using device::RouteOptions;
using device::RouteScheduler;
using device::RoutingResult;

namespace {

/// Independent all-pairs BFS oracle over an explicit adjacency list.
std::vector<std::vector<size_t>> bfs_distances(size_t n, std::vector<std::pair<size_t, size_t>> const& edges) {
    std::vector<std::vector<size_t>> adj(n);
    for (auto const& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<std::vector<size_t>> dist(n, std::vector<size_t>(n, SIZE_MAX));
    for (size_t s = 0; s < n; ++s) {
        dist[s][s] = 0;
        std::queue<size_t> queue;
        queue.push(s);
        while (!queue.empty()) {
            size_t u = queue.front();
            queue.pop();
            for (size_t v : adj[u])
                if (dist[s][v] == SIZE_MAX) {
                    dist[s][v] = dist[s][u] + 1;
                    queue.push(v);
                }
        }
    }
    return dist;
}

Device line3() { return Device{"line3", 3, {{0, 1}, {1, 2}}}; }

/// 5-qubit tee: a 0-1-2 spine with 1-3 and 3-4 hanging off.
Device tee5() { return Device{"tee5", 5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}}}; }

Device complete(size_t n) {
    std::vector<std::pair<size_t, size_t>> edges;
    for (size_t u = 0; u < n; ++u)
        for (size_t v = u + 1; v < n; ++v) edges.push_back({u, v});
    return Device{"k" + std::to_string(n), n, edges};
}

/**
 * Exhaustive minimal swap count to make one two-qubit gate executable:
 * BFS over all placements, moves are swaps on device edges.
 */
size_t brute_force_min_swaps(Device const& d, size_t la, size_t lb) {
    std::vector<size_t> start(d.n_physical());
    std::iota(start.begin(), start.end(), 0);  // identity: logical l at physical l
    std::map<std::vector<size_t>, size_t> dist;
    dist[start] = 0;
    std::queue<std::vector<size_t>> queue;
    queue.push(start);
    while (!queue.empty()) {
        auto cur = queue.front();
        queue.pop();
        if (d.adjacent(cur[la], cur[lb])) return dist[cur];
        for (auto const& [u, v] : d.edges()) {
            auto nxt = cur;
            for (auto& p : nxt) {
                if (p == u)
                    p = v;
                else if (p == v)
                    p = u;
            }
            if (!dist.count(nxt)) {
                dist[nxt] = dist[cur] + 1;
                queue.push(nxt);
            }
        }
    }
    FAIL("gate can never become executable");
    return SIZE_MAX;
}

qcir::QuantumCircuit random_circuit(size_t n_qubits, size_t n_gates, uint64_t seed) {
    std::mt19937_64 rng{seed};
    qcir::QuantumCircuit c{n_qubits};
    std::vector<std::string> one{"h", "s", "t", "x", "z", "tdg"};
    std::vector<std::string> two{"cx", "cz", "swap"};
    for (size_t i = 0; i < n_gates; ++i) {
        if (n_qubits >= 2 && rng() % 2 == 0) {
            size_t a = rng() % n_qubits, b = rng() % (n_qubits - 1);
            if (b >= a) ++b;
            c.add_gate(two[rng() % two.size()], {a, b});
        } else {
            c.add_gate(one[rng() % one.size()], {rng() % n_qubits});
        }
    }
    return c;
}

}  // namespace

TEST_CASE("device files parse into connectivity with hop distances") {
    auto d = device::parse_device(
        "device-v1 line3 3\n"
        "0 1\n"
        "1 2\n");
    REQUIRE(d.name() == "line3");
    REQUIRE(d.n_physical() == 3);
    REQUIRE(d.adjacent(0, 1));
    REQUIRE(d.adjacent(2, 1));
    REQUIRE_FALSE(d.adjacent(0, 2));
    REQUIRE(d.distance(0, 2) == 2);
    REQUIRE(d.distance(2, 0) == 2);
    REQUIRE(d.distance(1, 1) == 0);
    REQUIRE(d.neighbors(1) == std::vector<size_t>{0, 2});

    auto triangle = device::parse_device("device-v1 tri 3\n0 1\n# a comment\n1 2\n0 2\n");
    for (size_t u = 0; u < 3; ++u)
        for (size_t v = 0; v < 3; ++v) REQUIRE(triangle.distance(u, v) == (u == v ? 0 : 1));

    auto star = device::parse_device("device-v1 star5 5\n0 1\n0 2\n0 3\n0 4\n");
    REQUIRE(star.distance(1, 4) == 2);
    REQUIRE(star.distance(0, 3) == 1);
}

TEST_CASE("device distances match an independent all-pairs search") {
    std::mt19937_64 rng{7};
    for (int trial = 0; trial < 20; ++trial) {
        size_t n = 2 + rng() % 7;
        // random spanning tree keeps it connected, then sprinkle extra edges
        std::vector<std::pair<size_t, size_t>> edges;
        for (size_t v = 1; v < n; ++v) edges.push_back({rng() % v, v});
        std::set<std::pair<size_t, size_t>> seen(edges.begin(), edges.end());
        for (size_t extra = rng() % n; extra > 0; --extra) {
            size_t u = rng() % n, v = rng() % n;
            if (u == v) continue;
            auto e = std::minmax(u, v);
            if (seen.insert({e.first, e.second}).second) edges.push_back({e.first, e.second});
        }
        Device d{"fuzz", n, edges};
        auto oracle = bfs_distances(n, edges);
        for (size_t u = 0; u < n; ++u)
            for (size_t v = 0; v < n; ++v) REQUIRE(d.distance(u, v) == oracle[u][v]);
    }
}

TEST_CASE("malformed device files are rejected") {
    REQUIRE_THROWS_AS(device::parse_device(""), std::invalid_argument);
    REQUIRE_THROWS_AS(device::parse_device("line3 3\n0 1\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(device::parse_device("device-v1 x 3 junk\n0 1\n1 2\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(device::parse_device("device-v1 x 3\n0 1 2\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(device::parse_device("device-v1 x 3\n0 one\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(device::parse_device("device-v1 x 3\n0 1\n1 0\n1 2\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(device::parse_device("device-v1 x 3\n0 0\n0 1\n1 2\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(device::parse_device("device-v1 x 3\n0 1\n1 5\n"), std::out_of_range);
    // 0-1 component and isolated qubit 2
    REQUIRE_THROWS_AS(device::parse_device("device-v1 x 3\n0 1\n"), std::invalid_argument);
}

TEST_CASE("device serialization round-trips") {
    auto d = tee5();
    auto reparsed = device::parse_device(d.to_string());
    REQUIRE(reparsed.name() == d.name());
    REQUIRE(reparsed.n_physical() == d.n_physical());
    REQUIRE(reparsed.edges() == d.edges());
}

TEST_CASE("heavy-hex fragments are connected and sparse") {
    for (size_t n : {1u, 2u, 6u, 12u, 20u, 40u}) {
        auto d = device::heavy_hex_fragment(n);
        REQUIRE(d.n_physical() == n);
        size_t max_degree = 0;
        for (size_t q = 0; q < n; ++q) {
            max_degree = std::max(max_degree, d.neighbors(q).size());
            REQUIRE(d.distance(0, q) != SIZE_MAX);  // constructor enforces connectivity
        }
        REQUIRE(max_degree <= 3);
        if (n >= 6) REQUIRE(max_degree >= 2);
    }
}

TEST_CASE("routing a single CX inserts the provably minimal number of swaps") {
    auto d = line3();
    for (size_t control = 0; control < 3; ++control) {
        for (size_t target = 0; target < 3; ++target) {
            if (control == target) continue;
            qcir::QuantumCircuit c{3};
            c.cx(control, target);
            size_t minimal = brute_force_min_swaps(d, control, target);
            REQUIRE(minimal == (d.adjacent(control, target) ? 0 : 1));
            for (auto objective : {RouteObjective::swaps, RouteObjective::depth}) {
                for (auto scheduler : {RouteScheduler::heuristic, RouteScheduler::search}) {
                    auto r = device::route(c, d, {.objective = objective, .scheduler = scheduler});
                    INFO("cx(" << control << "," << target << ")");
                    REQUIRE(r.swap_count == minimal);
                    REQUIRE(device::validate_mapping(r, d));
                    auto recovered = device::unmap(r);
                    REQUIRE(tensor::equiv_up_to_global_phase(recovered, c).equivalent);
                }
            }
        }
    }
}

TEST_CASE("fully connected devices need no swaps") {
    auto d = complete(4);
    auto c = random_circuit(4, 30, 11);
    auto r = device::route(c, d);
    REQUIRE(r.swap_count == 0);
    REQUIRE(r.mapped_circuit.size() == c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        REQUIRE(r.mapped_circuit.gates()[i].kind == c.gates()[i].kind);
        REQUIRE(r.mapped_circuit.gates()[i].qubits == c.gates()[i].qubits);
    }
    REQUIRE(r.final_placement == r.initial_placement);
}

TEST_CASE("routed circuits pass validation and unmap to the original") {
    auto d = tee5();
    for (uint64_t seed = 0; seed < 12; ++seed) {
        auto c = random_circuit(4, 25, 100 + seed);
        RouteOptions options;
        options.objective = seed % 2 ? RouteObjective::depth : RouteObjective::swaps;
        options.scheduler = (seed / 2) % 2 ? RouteScheduler::search : RouteScheduler::heuristic;
        options.decompose_swaps = (seed % 3 == 0);
        auto r = device::route(c, d, options);
        REQUIRE(device::validate_mapping(r, d));
        for (auto const& g : r.mapped_circuit.gates())
            if (g.qubits.size() == 2) REQUIRE(d.adjacent(g.qubits[0], g.qubits[1]));
        if (options.decompose_swaps)
            for (size_t pos : r.inserted_swap_positions)
                REQUIRE(r.mapped_circuit.gates()[pos].kind == "cx");
        auto recovered = device::unmap(r);
        REQUIRE(recovered.n_qubits() == c.n_qubits());
        REQUIRE(tensor::equiv_up_to_global_phase(recovered, c).equivalent);
    }
}

TEST_CASE("validation rejects corrupted routing results") {
    auto d = line3();
    qcir::QuantumCircuit c{3};
    c.cx(0, 2);
    auto r = device::route(c, d);
    REQUIRE(device::validate_mapping(r, d));

    auto broken_gate = r;
    broken_gate.mapped_circuit.add_gate("cx", {0, 2});
    REQUIRE_FALSE(device::validate_mapping(broken_gate, d));

    auto broken_placement = r;
    broken_placement.final_placement = broken_placement.initial_placement;
    REQUIRE_FALSE(device::validate_mapping(broken_placement, d));

    auto broken_record = r;
    broken_record.inserted_swap_positions.clear();
    REQUIRE_FALSE(device::validate_mapping(broken_record, d));
}

TEST_CASE("routing is deterministic") {
    auto d = tee5();
    auto c = random_circuit(4, 40, 42);
    for (auto scheduler : {RouteScheduler::heuristic, RouteScheduler::search}) {
        auto a = device::route(c, d, {.scheduler = scheduler});
        auto b = device::route(c, d, {.scheduler = scheduler});
        REQUIRE(a.mapped_circuit.size() == b.mapped_circuit.size());
        for (size_t i = 0; i < a.mapped_circuit.size(); ++i) {
            REQUIRE(a.mapped_circuit.gates()[i].kind == b.mapped_circuit.gates()[i].kind);
            REQUIRE(a.mapped_circuit.gates()[i].qubits == b.mapped_circuit.gates()[i].qubits);
        }
        REQUIRE(a.inserted_swap_positions == b.inserted_swap_positions);
    }
}

TEST_CASE("mapped delay counts one-qubit gates as 1 and two-qubit gates as 2") {
    auto d = line3();
    qcir::QuantumCircuit c{3};
    c.h(0);      // 1
    c.cx(0, 1);  // 2
    c.cx(0, 2);  // needs 1 swap (2) + cx (2)
    auto r = device::route(c, d);
    REQUIRE(r.swap_count == 1);
    REQUIRE(r.mapped_delay == 1 + 2 + 2 + 2);

    auto decomposed = device::route(c, d, {.decompose_swaps = true});
    REQUIRE(decomposed.swap_count == 1);
    REQUIRE(decomposed.mapped_circuit.size() == 6);  // h, cx, then 3 cx for the swap, then cx
    REQUIRE(decomposed.mapped_delay == 1 + 2 + 3 * 2 + 2);
}

TEST_CASE("oversized or multi-control inputs are rejected") {
    qcir::QuantumCircuit big{4};
    big.cx(0, 3);
    REQUIRE_THROWS_AS(device::route(big, line3()), std::invalid_argument);

    qcir::QuantumCircuit mct{3};
    mct.ccx(0, 1, 2);
    REQUIRE_THROWS_AS(device::route(mct, complete(3)), std::invalid_argument);
}
