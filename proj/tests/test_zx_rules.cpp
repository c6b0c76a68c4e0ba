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

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "qcw/tensor/unitary.hpp"
#include "qcw/zx/diagram.hpp"
#include "qcw/zx/simplify.hpp"
#include "qcw/zx/to_tensor.hpp"

using namespace qcw;
using qcir::Phase;
using qcir::QuantumCircuit;

namespace {

bool diagram_matches(zx::ZXDiagram const& g, QuantumCircuit const& c) {
    return tensor::proportional_matrices(zx::to_tensor(g), tensor::unitary_of_circuit(c));
}

bool diagrams_match(zx::ZXDiagram const& a, zx::ZXDiagram const& b) {
    return tensor::proportional_matrices(zx::to_tensor(a), zx::to_tensor(b));
}

QuantumCircuit random_circuit(std::mt19937_64& rng, size_t n, size_t len, bool with_t) {
    std::vector<std::string> pool = {"h", "x", "y", "z", "s", "sdg", "sx"};
    if (with_t) {
        pool.push_back("t");
        pool.push_back("tdg");
    }
    QuantumCircuit c{n};
    for (size_t i = 0; i < len; ++i) {
        size_t pick = rng() % (pool.size() + (n >= 2 ? 3 : 0));
        if (pick < pool.size()) {
            c.add_gate(pool[pick], {rng() % n});
        } else {
            size_t a = rng() % n, b = rng() % n;
            while (b == a) b = rng() % n;
            c.add_gate(pick == pool.size() ? "cx" : pick == pool.size() + 1 ? "cz" : "swap", {a, b});
        }
    }
    return c;
}

}  // namespace

TEST_CASE("diagram construction matches circuit semantics") {
    auto single = [](std::string kind, size_t n, std::vector<size_t> qs, Phase p = {}) {
        QuantumCircuit c{n};
        c.add_gate(std::move(kind), std::move(qs), p);
        return c;
    };
    std::vector<QuantumCircuit> corpus;
    corpus.push_back(QuantumCircuit{2});  // bare wires
    for (std::string k : {"h", "x", "y", "z", "s", "sdg", "t", "tdg", "sx"})
        corpus.push_back(single(k, 1, {0}));
    corpus.push_back(single("rz", 1, {0}, Phase{3, 8}));
    corpus.push_back(single("rx", 1, {0}, Phase{5, 4}));
    corpus.push_back(single("cx", 2, {0, 1}));
    corpus.push_back(single("cx", 2, {1, 0}));
    corpus.push_back(single("cz", 2, {0, 1}));
    corpus.push_back(single("swap", 2, {0, 1}));
    corpus.push_back(single("ccz", 3, {0, 1, 2}));
    corpus.push_back(single("ccx", 3, {0, 1, 2}));
    {
        QuantumCircuit c{2};
        c.h(1);
        c.cx(0, 1);
        c.h(1);
        corpus.push_back(c);
    }
    {
        QuantumCircuit c{1};  // only wire toggles
        c.h(0);
        c.h(0);
        corpus.push_back(c);
    }
    for (auto const& c : corpus) {
        INFO(c.to_string());
        CHECK(diagram_matches(zx::from_circuit(c), c));
    }
}

TEST_CASE("diagram construction matches random circuits") {
    std::mt19937_64 rng{5150};
    for (int trial = 0; trial < 20; ++trial) {
        auto c = random_circuit(rng, 2 + trial % 2, 10, true);
        INFO(c.to_string());
        CHECK(diagram_matches(zx::from_circuit(c), c));
    }
}

TEST_CASE("graph-like conversion preserves the map and certifies") {
    std::mt19937_64 rng{777001};
    for (int trial = 0; trial < 25; ++trial) {
        auto c = random_circuit(rng, 2 + trial % 2, 12, true);
        auto g = zx::from_circuit(c);
        zx::to_graph_like(g);
        INFO(c.to_string());
        CHECK(g.is_graph_like());
        CHECK(diagram_matches(g, c));
    }
}

TEST_CASE("identity removal, local complementation, and pivot preserve the map") {
    std::mt19937_64 rng{424242};
    bool id_fired = false, lcomp_fired = false, pivot_fired = false;
    for (int trial = 0; trial < 30; ++trial) {
        auto c = random_circuit(rng, 2 + trial % 2, 12, false);  // clifford only
        auto g = zx::from_circuit(c);
        zx::to_graph_like(g);

        auto before = g;
        if (zx::id_removal_pass(g)) id_fired = true;
        INFO("id removal on\n" << before.to_string());
        CHECK(diagrams_match(before, g));

        before = g;
        if (zx::lcomp_pass(g)) lcomp_fired = true;
        INFO("lcomp on\n" << before.to_string());
        CHECK(diagrams_match(before, g));

        before = g;
        if (zx::pivot_pass(g)) pivot_fired = true;
        INFO("pivot on\n" << before.to_string());
        CHECK(diagrams_match(before, g));
    }
    CHECK(id_fired);
    CHECK(lcomp_fired);
    CHECK(pivot_fired);
}

TEST_CASE("gadget-creating pivot and gadget housekeeping preserve the map") {
    std::mt19937_64 rng{31415};
    bool pg_fired = false, gadget_fired = false;
    for (int trial = 0; trial < 30; ++trial) {
        auto c = random_circuit(rng, 2 + trial % 2, 12, true);
        auto g = zx::from_circuit(c);
        zx::to_graph_like(g);
        // drive toward states where gadget rules apply
        for (int k = 0; k < 3; ++k) {
            zx::id_removal_pass(g);
            zx::lcomp_pass(g);
            zx::pivot_pass(g);
        }
        auto before = g;
        if (zx::pivot_gadget_pass(g)) pg_fired = true;
        INFO("gadget pivot on\n" << before.to_string());
        CHECK(diagrams_match(before, g));

        before = g;
        if (zx::gadget_pass(g)) gadget_fired = true;
        INFO("gadget pass on\n" << before.to_string());
        CHECK(diagrams_match(before, g));
    }
    CHECK(pg_fired);
    CHECK(gadget_fired);
}

TEST_CASE("same-support gadgets fuse and pi gadgets are absorbed") {
    // two-wire diagram with two identical-support gadgets of phase pi/4 each
    zx::ZXDiagram g;
    size_t i0 = g.add_input(0), i1 = g.add_input(1);
    size_t o0 = g.add_output(0), o1 = g.add_output(1);
    size_t a = g.add_vertex(zx::VertexType::z), b = g.add_vertex(zx::VertexType::z);
    g.add_edge(i0, a, zx::EdgeType::simple);
    g.add_edge(a, o0, zx::EdgeType::simple);
    g.add_edge(i1, b, zx::EdgeType::simple);
    g.add_edge(b, o1, zx::EdgeType::simple);
    auto add_gadget = [&](Phase p) {
        size_t root = g.add_vertex(zx::VertexType::z);
        size_t leg = g.add_vertex(zx::VertexType::z, p);
        g.add_edge(root, leg, zx::EdgeType::hadamard);
        g.add_edge(root, a, zx::EdgeType::hadamard);
        g.add_edge(root, b, zx::EdgeType::hadamard);
    };
    add_gadget(Phase{1, 4});
    add_gadget(Phase{1, 4});

    auto before = g;
    REQUIRE(zx::gadget_pass(g));
    CHECK(diagrams_match(before, g));
    CHECK(g.stats().t_count == 0);  // pi/4 + pi/4 merged into pi/2

    // run to the fixpoint: the pi/2 gadget is clifford and must dissolve
    zx::full_reduce(g);
    CHECK(diagrams_match(before, g));
    bool any_leg = false;
    for (auto const& [id, v] : g.vertices())
        if (zx::is_gadget_leg(g, id)) any_leg = true;
    CHECK_FALSE(any_leg);
}

TEST_CASE("full reduction preserves the map on clifford+t circuits") {
    std::mt19937_64 rng{90210};
    for (int trial = 0; trial < 25; ++trial) {
        auto c = random_circuit(rng, 2 + trial % 3, 14, true);
        auto g = zx::from_circuit(c);
        zx::full_reduce(g);
        INFO(c.to_string());
        CHECK(g.is_graph_like());
        CHECK(diagram_matches(g, c));
        CHECK(g.stats().t_count <= c.statistics().t_count);
    }
}

TEST_CASE("full reduction strips clifford circuits of non-clifford phases") {
    std::mt19937_64 rng{1024};
    for (int trial = 0; trial < 15; ++trial) {
        auto c = random_circuit(rng, 2 + trial % 3, 16, false);
        auto g = zx::from_circuit(c);
        zx::full_reduce(g);
        INFO(c.to_string());
        CHECK(diagram_matches(g, c));
        CHECK(g.stats().non_clifford_count == 0);
    }
}

TEST_CASE("early stop leaves a graph-like diagram and preserves the map") {
    std::mt19937_64 rng{555};
    for (int trial = 0; trial < 10; ++trial) {
        auto c = random_circuit(rng, 2, 12, true);
        auto g = zx::from_circuit(c);
        zx::full_reduce(g, true);
        CHECK(g.is_graph_like());
        CHECK(diagram_matches(g, c));
    }
}

TEST_CASE("multi-control gates convert through their rotation expansion") {
    for (std::string kind : {"ccz", "ccx"}) {
        QuantumCircuit c{3};
        c.add_gate(kind, {0, 1, 2});
        auto g = zx::from_circuit(c);
        CHECK(diagram_matches(g, c));
        zx::full_reduce(g);
        CHECK(diagram_matches(g, c));
        CHECK(g.stats().t_count <= 7);
    }
}
