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
#include "qcw/zx/extract.hpp"
#include "qcw/zx/simplify.hpp"

using namespace qcw;
using qcir::Phase;
using qcir::QuantumCircuit;

namespace {

bool round_trips(QuantumCircuit const& c, bool reduce,
                 zx::ExtractStrategy strategy = zx::ExtractStrategy::min_cz) {
    auto g = zx::from_circuit(c);
    if (reduce) zx::full_reduce(g);
    auto out = zx::extract_circuit(g, strategy);
    return tensor::equiv_up_to_global_phase(c, out).equivalent;
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

size_t count_kind(QuantumCircuit const& c, std::string const& kind) {
    size_t k = 0;
    for (auto const& g : c.gates())
        if (g.kind == kind) ++k;
    return k;
}

}  // namespace

TEST_CASE("extraction round-trips fixed circuits without reduction") {
    auto single = [](std::string kind, size_t n, std::vector<size_t> qs, Phase p = {}) {
        QuantumCircuit c{n};
        c.add_gate(std::move(kind), std::move(qs), p);
        return c;
    };
    std::vector<QuantumCircuit> corpus;
    corpus.push_back(QuantumCircuit{1});
    corpus.push_back(QuantumCircuit{3});
    for (std::string k : {"h", "x", "y", "z", "s", "t", "sx"}) corpus.push_back(single(k, 1, {0}));
    corpus.push_back(single("rz", 1, {0}, Phase{3, 8}));
    corpus.push_back(single("cx", 2, {0, 1}));
    corpus.push_back(single("cx", 2, {1, 0}));
    corpus.push_back(single("cz", 2, {0, 1}));
    corpus.push_back(single("swap", 2, {0, 1}));
    corpus.push_back(single("swap", 3, {0, 2}));
    {
        QuantumCircuit c{2};
        c.h(1);
        c.cx(0, 1);
        c.h(1);
        corpus.push_back(c);
    }
    {
        QuantumCircuit c{3};  // permutation stack
        c.swap(0, 1);
        c.swap(1, 2);
        corpus.push_back(c);
    }
    {
        QuantumCircuit c{2};  // phase gadget shape: cx t cx
        c.cx(0, 1);
        c.t(1);
        c.cx(0, 1);
        corpus.push_back(c);
    }
    for (auto const& c : corpus) {
        INFO(c.to_string());
        CHECK(round_trips(c, false));
    }
}

TEST_CASE("extraction round-trips fixed circuits after full reduction") {
    std::vector<QuantumCircuit> corpus;
    {
        QuantumCircuit c{3};
        c.add_gate("ccz", {0, 1, 2});
        corpus.push_back(c);
    }
    {
        QuantumCircuit c{3};
        c.add_gate("ccx", {0, 1, 2});
        corpus.push_back(c);
    }
    {
        QuantumCircuit c{2};
        c.cx(0, 1);
        c.t(1);
        c.cx(0, 1);
        c.h(0);
        c.t(0);
        corpus.push_back(c);
    }
    for (auto const& c : corpus) {
        INFO(c.to_string());
        CHECK(round_trips(c, true));
    }
}

TEST_CASE("extraction round-trips random clifford circuits") {
    std::mt19937_64 rng{660066};
    for (int trial = 0; trial < 25; ++trial) {
        auto c = random_circuit(rng, 2 + trial % 3, 12, false);
        INFO(c.to_string());
        CHECK(round_trips(c, false));
        CHECK(round_trips(c, true));
    }
}

TEST_CASE("extraction round-trips random clifford+t circuits after reduction") {
    std::mt19937_64 rng{20260815};
    for (int trial = 0; trial < 25; ++trial) {
        auto c = random_circuit(rng, 2 + trial % 3, 12, true);
        auto g = zx::from_circuit(c);
        zx::full_reduce(g);
        auto out = zx::extract_circuit(g);
        INFO(c.to_string());
        CHECK(tensor::equiv_up_to_global_phase(c, out).equivalent);
        CHECK(out.statistics().t_count <= c.statistics().t_count);
    }
}

TEST_CASE("both gadget strategies are sound and min_cz emits no more cz overall") {
    std::mt19937_64 rng{808};
    size_t total_naive = 0, total_min = 0;
    for (int trial = 0; trial < 20; ++trial) {
        auto c = random_circuit(rng, 3, 14, true);
        auto g = zx::from_circuit(c);
        zx::full_reduce(g);
        auto naive = zx::extract_circuit(g, zx::ExtractStrategy::naive);
        auto tuned = zx::extract_circuit(g, zx::ExtractStrategy::min_cz);
        INFO(c.to_string());
        CHECK(tensor::equiv_up_to_global_phase(c, naive).equivalent);
        CHECK(tensor::equiv_up_to_global_phase(c, tuned).equivalent);
        total_naive += count_kind(naive, "cz");
        total_min += count_kind(tuned, "cz");
    }
    CHECK(total_min <= total_naive);
}

TEST_CASE("extraction is deterministic") {
    std::mt19937_64 rng{3131};
    auto c = random_circuit(rng, 3, 14, true);
    auto g = zx::from_circuit(c);
    zx::full_reduce(g);
    auto a = zx::extract_circuit(g);
    auto b = zx::extract_circuit(g);
    CHECK(a.to_string() == b.to_string());
}

TEST_CASE("extraction rejects mismatched boundaries") {
    zx::ZXDiagram g;
    g.add_input(0);
    size_t v = g.add_vertex(zx::VertexType::z);
    g.add_edge(g.inputs()[0], v, zx::EdgeType::simple);
    CHECK_THROWS_AS(zx::extract_circuit(g), std::invalid_argument);
}
