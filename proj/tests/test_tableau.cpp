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
#include <cmath>
#include <complex>
#include <random>

#include "qcw/tableau/clifford.hpp"
#include "qcw/tableau/pauli.hpp"
#include "qcw/tableau/tableau.hpp"
#include "qcw/tensor/unitary.hpp"

using namespace qcw;
using qcir::Phase;
using qcir::QuantumCircuit;
using tableau::CliffordTableau;
using tableau::PauliRotation;
using tableau::PauliString;

namespace {

// dense oracle built from scratch: qubit 0 is the most significant bit
Eigen::MatrixXcd kron(Eigen::MatrixXcd const& a, Eigen::MatrixXcd const& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Eigen::Matrix2cd pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}
Eigen::Matrix2cd pauli_z() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

Eigen::MatrixXcd dense(PauliString const& p) {
    using namespace std::complex_literals;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (size_t q = 0; q < p.num_qubits(); ++q) {
        Eigen::Matrix2cd local = Eigen::Matrix2cd::Identity();
        if (p.x_bit(q)) local = pauli_x() * local;
        if (p.z_bit(q)) local = local * pauli_z();  // X before Z
        m = kron(m, local);
    }
    std::complex<double> phase = 1;
    for (unsigned i = 0; i < p.i_power(); ++i) phase *= 1i;
    return phase * m;
}

// exp(-i * theta/2 * M) for an involution M
Eigen::MatrixXcd dense_rotation(Eigen::MatrixXcd const& m, double theta) {
    using namespace std::complex_literals;
    auto dim = m.rows();
    return std::cos(theta / 2) * Eigen::MatrixXcd::Identity(dim, dim) -
           1i * std::sin(theta / 2) * m;
}

PauliString random_pauli(std::mt19937_64& rng, size_t n) {
    PauliString p{n};
    for (size_t q = 0; q < n; ++q) {
        switch (rng() % 4) {
            case 1: p = p * PauliString::make_x(n, q); break;
            case 2: p = p * PauliString::make_y(n, q); break;
            case 3: p = p * PauliString::make_z(n, q); break;
            default: break;
        }
    }
    p.add_i_power(static_cast<unsigned>(rng() % 4));
    return p;
}

PauliString random_hermitian_pauli(std::mt19937_64& rng, size_t n) {
    auto p = random_pauli(rng, n);
    p.set_sign(rng() % 2 ? 1 : -1);
    return p;
}

QuantumCircuit random_clifford_circuit(std::mt19937_64& rng, size_t n, size_t len) {
    std::vector<std::string> pool = {"h", "x", "y", "z", "s", "sdg", "sx"};
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

CliffordTableau tableau_of(QuantumCircuit const& c) {
    CliffordTableau t{c.n_qubits()};
    for (auto const& g : c.gates()) t.apply_gate(g);
    return t;
}

bool matrices_close(Eigen::MatrixXcd const& a, Eigen::MatrixXcd const& b, double tol = 1e-10) {
    return (a - b).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

TEST_CASE("pauli string factories match their dense forms") {
    using namespace std::complex_literals;
    auto x = dense(PauliString::make_x(1, 0));
    auto z = dense(PauliString::make_z(1, 0));
    auto y = dense(PauliString::make_y(1, 0));
    REQUIRE(matrices_close(x, pauli_x()));
    REQUIRE(matrices_close(z, pauli_z()));
    Eigen::Matrix2cd ym;
    ym << 0, -1i, 1i, 0;
    REQUIRE(matrices_close(y, ym));
    REQUIRE(PauliString::make_y(1, 0).sign() == 1);
    REQUIRE(PauliString::make_y(1, 0).is_hermitian());

    auto d = PauliString::make_diagonal(3, 0b101);
    REQUIRE(matrices_close(dense(d), kron(kron(pauli_z(), Eigen::Matrix2cd::Identity()), pauli_z())));
    REQUIRE(PauliString::make_x(2, 1).to_string() == "+IX");
    REQUIRE(PauliString::make_y(2, 0).to_string() == "+YI");
}

TEST_CASE("pauli products and commutation match dense algebra") {
    std::mt19937_64 rng{7};
    for (int iter = 0; iter < 300; ++iter) {
        size_t n = 1 + rng() % 3;
        auto a = random_pauli(rng, n);
        auto b = random_pauli(rng, n);
        REQUIRE(matrices_close(dense(a * b), dense(a) * dense(b)));
        bool dense_commute = matrices_close(dense(a) * dense(b), dense(b) * dense(a));
        REQUIRE(a.commutes_with(b) == dense_commute);
    }
}

TEST_CASE("hermiticity bookkeeping survives products") {
    std::mt19937_64 rng{8};
    for (int iter = 0; iter < 200; ++iter) {
        auto p = random_hermitian_pauli(rng, 3);
        REQUIRE(p.is_hermitian());
        auto m = dense(p);
        REQUIRE(matrices_close(m, m.adjoint()));
        auto unsigned_p = p;
        unsigned_p.set_sign(1);
        REQUIRE(matrices_close(m, static_cast<double>(p.sign()) * dense(unsigned_p)));
        auto neg = p;
        neg.negate();
        REQUIRE(matrices_close(dense(neg), -m));
    }
}

TEST_CASE("gate conjugation of pauli strings matches dense conjugation") {
    std::mt19937_64 rng{11};
    std::vector<std::pair<std::string, size_t>> kinds = {
        {"h", 1}, {"x", 1}, {"y", 1}, {"z", 1}, {"s", 1},  {"sdg", 1},
        {"sx", 1}, {"cx", 2}, {"cz", 2}, {"swap", 2},
    };
    for (int iter = 0; iter < 400; ++iter) {
        size_t n = 2 + rng() % 2;
        auto [kind, arity] = kinds[rng() % kinds.size()];
        std::vector<size_t> qs = {rng() % n};
        if (arity == 2) {
            size_t b = rng() % n;
            while (b == qs[0]) b = rng() % n;
            qs.push_back(b);
        }
        QuantumCircuit gc{n};
        gc.add_gate(kind, qs);
        auto u = tensor::unitary_of_circuit(gc);

        auto p = random_pauli(rng, n);
        auto conj = p;
        conj.apply_gate(kind, qs);
        REQUIRE(matrices_close(dense(conj), u * dense(p) * u.adjoint()));
    }
}

TEST_CASE("sxdg conjugation is the adjoint of sx conjugation") {
    std::mt19937_64 rng{12};
    QuantumCircuit gc{2};
    gc.add_gate("sx", {1});
    auto u = tensor::unitary_of_circuit(gc).adjoint().eval();
    for (int iter = 0; iter < 50; ++iter) {
        auto p = random_pauli(rng, 2);
        auto conj = p;
        conj.apply_gate("sxdg", {1});
        REQUIRE(matrices_close(dense(conj), u * dense(p) * u.adjoint()));
        auto back = conj;
        back.apply_gate("sx", {1});
        REQUIRE(back == p);
    }
}

TEST_CASE("rotation conjugation matches dense rotation sandwiches") {
    std::mt19937_64 rng{13};
    for (int iter = 0; iter < 300; ++iter) {
        size_t n = 1 + rng() % 3;
        auto p = random_hermitian_pauli(rng, n);
        auto q = random_hermitian_pauli(rng, n);
        int k = static_cast<int>(rng() % 4);
        auto v = dense_rotation(dense(p), k * M_PI / 2);
        auto got = conj_by_rotation(q, p, k);
        REQUIRE(got.is_hermitian());
        REQUIRE(matrices_close(dense(got), v * dense(q) * v.adjoint()));
    }
}

TEST_CASE("pauli rotations fold negative axes into the angle") {
    std::mt19937_64 rng{17};
    for (int iter = 0; iter < 100; ++iter) {
        auto p = random_hermitian_pauli(rng, 2);
        Phase angle{static_cast<int64_t>(rng() % 8), 4};
        PauliRotation r{p, angle};
        REQUIRE(r.pauli().sign() == 1);
        auto direct = dense_rotation(dense(p), angle.to_radians());
        auto stored = dense_rotation(dense(r.pauli()), r.angle().to_radians());
        // angle normalization may cost a global -1 (a full 2*pi of the axis)
        REQUIRE(tensor::proportional_matrices(direct, stored));
    }
    PauliRotation quarter{PauliString::make_z(1, 0), Phase{1, 2}};
    REQUIRE(quarter.quarter_turns() == 1);
    PauliRotation half{PauliString::make_z(1, 0), Phase{1}};
    REQUIRE(half.quarter_turns() == 2);
    PauliRotation t_like{PauliString::make_z(1, 0), Phase{1, 4}};
    REQUIRE(t_like.is_t_like());
    REQUIRE(!t_like.is_clifford());
}

TEST_CASE("clifford tableaus reproduce the circuits that built them") {
    std::mt19937_64 rng{21};
    for (int iter = 0; iter < 40; ++iter) {
        size_t n = 1 + rng() % 4;
        auto c = random_clifford_circuit(rng, n, 4 + rng() % 20);
        auto t = tableau_of(c);
        REQUIRE(t.symplectic_ok());
        auto back = t.to_circuit();
        for (auto const& g : back.gates()) {
            REQUIRE((g.kind == "h" || g.kind == "s" || g.kind == "sdg" || g.kind == "cx" ||
                     g.kind == "cz" || g.kind == "x" || g.kind == "z"));
        }
        REQUIRE(tensor::equiv_up_to_global_phase(c, back).equivalent);
    }
}

TEST_CASE("tableau evaluate matches dense conjugation by the circuit") {
    std::mt19937_64 rng{23};
    for (int iter = 0; iter < 60; ++iter) {
        size_t n = 1 + rng() % 3;
        auto c = random_clifford_circuit(rng, n, 10);
        auto t = tableau_of(c);
        auto u = tensor::unitary_of_circuit(c);
        auto p = random_pauli(rng, n);
        REQUIRE(matrices_close(dense(t.evaluate(p)), u * dense(p) * u.adjoint()));
    }
}

TEST_CASE("tableau composition and inversion match operator algebra") {
    std::mt19937_64 rng{29};
    for (int iter = 0; iter < 30; ++iter) {
        size_t n = 2 + rng() % 2;
        auto ca = random_clifford_circuit(rng, n, 12);
        auto cb = random_clifford_circuit(rng, n, 12);
        auto ta = tableau_of(ca);
        auto tb = tableau_of(cb);
        auto ab = CliffordTableau::compose(ta, tb);
        auto ua = tensor::unitary_of_circuit(ca);
        auto ub = tensor::unitary_of_circuit(cb);
        REQUIRE(tensor::proportional_matrices(tensor::unitary_of_circuit(ab.to_circuit()),
                                              ua * ub));
        REQUIRE(CliffordTableau::compose(ta, ta.inverse()).is_identity());
        REQUIRE(CliffordTableau::compose(ta.inverse(), ta).is_identity());
        REQUIRE(ta.inverse().inverse() == ta);
    }
}

TEST_CASE("right-composing gates builds the tableau in reverse") {
    std::mt19937_64 rng{31};
    for (int iter = 0; iter < 30; ++iter) {
        size_t n = 2 + rng() % 3;
        auto c = random_clifford_circuit(rng, n, 15);
        auto fwd = tableau_of(c);
        CliffordTableau rev{n};
        auto const& gates = c.gates();
        for (auto it = gates.rbegin(); it != gates.rend(); ++it)
            rev.right_compose_gate(it->kind, it->qubits);
        REQUIRE(fwd == rev);
    }
}

TEST_CASE("rotation composition on tableaus matches dense products") {
    std::mt19937_64 rng{37};
    for (int iter = 0; iter < 40; ++iter) {
        size_t n = 2 + rng() % 2;
        auto c = random_clifford_circuit(rng, n, 10);
        auto p = random_hermitian_pauli(rng, n);
        int k = 1 + static_cast<int>(rng() % 3);
        auto u = tensor::unitary_of_circuit(c);
        auto v = dense_rotation(dense(p), k * M_PI / 2);

        auto left = tableau_of(c);
        left.left_compose_rotation(p, k);
        REQUIRE(tensor::proportional_matrices(tensor::unitary_of_circuit(left.to_circuit()),
                                              v * u));

        auto right = tableau_of(c);
        right.right_compose_rotation(p, k);
        REQUIRE(tensor::proportional_matrices(tensor::unitary_of_circuit(right.to_circuit()),
                                              u * v));
    }
}

TEST_CASE("netlists convert to a rotation group followed by one clifford") {
    SECTION("an s gate leaves an empty group and maps X to Y") {
        QuantumCircuit c{1};
        c.s(0);
        auto t = tableau::from_circuit(c);
        REQUIRE(t.size() == 2);
        auto const& rots = std::get<tableau::RotationGroup>(t.elements()[0]);
        REQUIRE(rots.empty());
        auto const& cliff = std::get<CliffordTableau>(t.elements()[1]);
        REQUIRE(cliff.destabilizer(0) == PauliString::make_y(1, 0));
        REQUIRE(cliff.stabilizer(0) == PauliString::make_z(1, 0));
    }
    SECTION("a t gate becomes a Z rotation next to the identity") {
        QuantumCircuit c{1};
        c.t(0);
        auto t = tableau::from_circuit(c);
        auto const& rots = std::get<tableau::RotationGroup>(t.elements()[0]);
        REQUIRE(rots.size() == 1);
        REQUIRE(rots[0].pauli() == PauliString::make_z(1, 0));
        REQUIRE(rots[0].angle() == Phase{1, 4});
        REQUIRE(std::get<CliffordTableau>(t.elements()[1]).is_identity());
    }
    SECTION("a hadamard before a t conjugates the rotation axis to X") {
        QuantumCircuit c{1};
        c.h(0);
        c.t(0);
        auto t = tableau::from_circuit(c);
        auto const& rots = std::get<tableau::RotationGroup>(t.elements()[0]);
        REQUIRE(rots.size() == 1);
        REQUIRE(rots[0].pauli() == PauliString::make_x(1, 0));
        REQUIRE(rots[0].angle() == Phase{1, 4});
    }
}

TEST_CASE("tableau round trips preserve the unitary") {
    std::mt19937_64 rng{41};
    for (int iter = 0; iter < 40; ++iter) {
        size_t n = 2 + rng() % 3;
        auto c = random_clifford_circuit(rng, n, 8);
        // salt with non-Clifford and multi-control content
        c.t(rng() % n);
        c.rz(Phase{1, 8}, rng() % n);
        c.rx(Phase{3, 4}, rng() % n);
        if (n >= 3) {
            c.ccz(0, 1, 2);
            c.ccx(2, 0, 1);
        }
        c.tdg(rng() % n);
        auto t = tableau::from_circuit(c);
        auto back = tableau::to_circuit(t);
        REQUIRE(tensor::equiv_up_to_global_phase(c, back).equivalent);
    }
}

TEST_CASE("clifford-angle axis rotations reduce to plain clifford tableaus") {
    std::mt19937_64 rng{43};
    for (int iter = 0; iter < 30; ++iter) {
        size_t n = 1 + rng() % 3;
        QuantumCircuit c{n};
        size_t q = rng() % n;
        int num = static_cast<int>(rng() % 4);
        c.rz(Phase{num, 2}, q);
        c.rx(Phase{num, 2}, q);
        auto t = tableau::from_circuit(c);
        REQUIRE(std::get<tableau::RotationGroup>(t.elements()[0]).empty());
        REQUIRE(tensor::equiv_up_to_global_phase(c, tableau::to_circuit(t)).equivalent);
    }
}

TEST_CASE("tableau statistics count rotation angles") {
    QuantumCircuit c{2};
    c.t(0);
    c.t(1);
    c.tdg(0);
    c.s(0);
    c.rz(Phase{1, 8}, 1);
    auto t = tableau::from_circuit(c);
    REQUIRE(t.t_count() == 3);
    REQUIRE(t.rz_count() == 4);
    REQUIRE(t.rotation_count() == 4);
}
