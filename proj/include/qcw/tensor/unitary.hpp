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

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "qcw/qcir/circuit.hpp"

namespace qcw::tensor {

using Unitary = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Dense evaluation is capped; everything above is out of oracle scope.
inline constexpr size_t kMaxDenseQubits = 10;

struct EquivalenceReport {
    bool equivalent = false;
    double fidelity = 0.0;  // |tr(U^dag V)| / dim
    Complex global_phase{1.0, 0.0};
};

namespace detail {

/// Basis convention: qubit 0 is the MOST significant index bit.
inline size_t bit_of(size_t index, size_t qubit, size_t n_qubits) {
    return (index >> (n_qubits - 1 - qubit)) & 1u;
}

inline Eigen::Matrix2cd local_1q(qcir::Gate const& g) {
    using namespace std::complex_literals;
    double const inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd m;
    if (g.kind == "h") {
        m << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
    } else if (g.kind == "x") {
        m << 0, 1, 1, 0;
    } else if (g.kind == "y") {
        m << 0, -1i, 1i, 0;
    } else if (g.kind == "z") {
        m << 1, 0, 0, -1;
    } else if (g.kind == "s") {
        m << 1, 0, 0, 1i;
    } else if (g.kind == "sdg") {
        m << 1, 0, 0, -1i;
    } else if (g.kind == "t") {
        m << 1, 0, 0, std::exp(1i * (std::numbers::pi / 4));
    } else if (g.kind == "tdg") {
        m << 1, 0, 0, std::exp(-1i * (std::numbers::pi / 4));
    } else if (g.kind == "sx") {
        m << 0.5 + 0.5i, 0.5 - 0.5i, 0.5 - 0.5i, 0.5 + 0.5i;
    } else if (g.kind == "rz") {
        double th = g.param.to_radians();
        m << std::exp(-1i * th / 2.0), 0, 0, std::exp(1i * th / 2.0);
    } else if (g.kind == "rx") {
        double th = g.param.to_radians();
        m << std::cos(th / 2), -1i * std::sin(th / 2), -1i * std::sin(th / 2), std::cos(th / 2);
    } else {
        throw std::invalid_argument(fmt::format("unitary: unknown 1-qubit kind '{}'", g.kind));
    }
    return m;
}

/// Local matrix over the gate's qubits; qubits[0] is the most significant
/// local bit, matching the global convention.
inline Eigen::MatrixXcd local_matrix(qcir::Gate const& g) {
    size_t k = g.qubits.size();
    size_t dim = size_t{1} << k;
    if (k == 1) return local_1q(g);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    if (g.kind == "cx") {
        m(0, 0) = 1;
        m(1, 1) = 1;
        m(2, 3) = 1;
        m(3, 2) = 1;
    } else if (g.kind == "cz") {
        m.setIdentity();
        m(3, 3) = -1;
    } else if (g.kind == "swap") {
        m(0, 0) = 1;
        m(1, 2) = 1;
        m(2, 1) = 1;
        m(3, 3) = 1;
    } else if (g.kind == "ccx" || g.kind == "mcx") {
        m.setIdentity();
        m(dim - 2, dim - 2) = 0;
        m(dim - 1, dim - 1) = 0;
        m(dim - 2, dim - 1) = 1;
        m(dim - 1, dim - 2) = 1;
    } else if (g.kind == "ccz" || g.kind == "mcz") {
        m.setIdentity();
        m(dim - 1, dim - 1) = -1;
    } else {
        auto const& info = g.type();
        if (!info.unitary)
            throw std::invalid_argument(
                fmt::format("unitary: no matrix registered for gate kind '{}'", g.kind));
        auto flat = info.unitary(g.param);
        if (flat.size() != dim * dim)
            throw std::invalid_argument(fmt::format("unitary: bad matrix size for kind '{}'", g.kind));
        for (size_t r = 0; r < dim; ++r)
            for (size_t c = 0; c < dim; ++c) m(r, c) = flat[r * dim + c];
    }
    return m;
}

}  // namespace detail

/// Applies gate g to every column of u (i.e. u := G * u).
inline void apply_gate(Unitary& u, qcir::Gate const& g, size_t n_qubits) {
    size_t k = g.qubits.size();
    size_t local_dim = size_t{1} << k;
    Eigen::MatrixXcd m =
        k == 1 ? Eigen::MatrixXcd(detail::local_1q(g)) : detail::local_matrix(g);

    // Strides of each gate qubit in the global index.
    std::vector<size_t> stride(k);
    for (size_t j = 0; j < k; ++j) stride[j] = size_t{1} << (n_qubits - 1 - g.qubits[j]);

    size_t dim = size_t{1} << n_qubits;
    std::vector<size_t> offsets(local_dim);
    for (size_t li = 0; li < local_dim; ++li) {
        size_t off = 0;
        for (size_t j = 0; j < k; ++j)
            if ((li >> (k - 1 - j)) & 1) off += stride[j];
        offsets[li] = off;
    }

    Eigen::VectorXcd scratch(local_dim);
    for (size_t base = 0; base < dim; ++base) {
        bool is_base = true;
        for (size_t j = 0; j < k; ++j)
            if (base & stride[j]) {
                is_base = false;
                break;
            }
        if (!is_base) continue;
        for (Eigen::Index col = 0; col < u.cols(); ++col) {
            for (size_t li = 0; li < local_dim; ++li) scratch(static_cast<Eigen::Index>(li)) = u(base + offsets[li], col);
            Eigen::VectorXcd out = m * scratch;
            for (size_t li = 0; li < local_dim; ++li) u(base + offsets[li], col) = out(static_cast<Eigen::Index>(li));
        }
    }
}

/// Dense unitary of the whole circuit (qubit 0 = most significant bit).
inline Unitary unitary_of_circuit(qcir::QuantumCircuit const& c) {
    if (c.n_qubits() > kMaxDenseQubits)
        throw std::invalid_argument(fmt::format("unitary_of_circuit: {} qubits exceeds the dense cap of {}",
                                                c.n_qubits(), kMaxDenseQubits));
    size_t dim = size_t{1} << c.n_qubits();
    Unitary u = Unitary::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (auto const& g : c.gates()) apply_gate(u, g, c.n_qubits());
    return u;
}

/// True when a == c*b for some nonzero complex scalar c (Frobenius cosine test).
inline bool proportional_matrices(Eigen::MatrixXcd const& a, Eigen::MatrixXcd const& b, double tol = 1e-9) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    double na = a.norm(), nb = b.norm();
    if (na < tol || nb < tol) return false;
    std::complex<double> inner = (a.adjoint() * b).trace();
    return std::abs(inner) / (na * nb) > 1.0 - tol;
}

inline bool is_unitary(Unitary const& u, double tol = 1e-9) {
    if (u.rows() != u.cols()) return false;
    Unitary prod = u * u.adjoint();
    return (prod - Unitary::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() < tol;
}

/**
 * @brief Global-phase-insensitive equivalence with the pinned tolerance.
 *
 * fidelity = |tr(U^dag V)| / dim; equivalent iff fidelity >= 1 - tol.
 */
inline EquivalenceReport equiv_up_to_global_phase(Unitary const& u, Unitary const& v,
                                                  double tol = 1e-9) {
    if (u.rows() != v.rows() || u.cols() != v.cols())
        throw std::invalid_argument("equiv_up_to_global_phase: dimension mismatch");
    EquivalenceReport rep;
    Complex tr = (u.adjoint() * v).trace();
    rep.fidelity = std::abs(tr) / static_cast<double>(u.rows());
    rep.equivalent = rep.fidelity >= 1.0 - tol;
    if (std::abs(tr) > 1e-12) rep.global_phase = tr / std::abs(tr);
    return rep;
}

inline EquivalenceReport equiv_up_to_global_phase(qcir::QuantumCircuit const& a,
                                                  qcir::QuantumCircuit const& b, double tol = 1e-9) {
    return equiv_up_to_global_phase(unitary_of_circuit(a), unitary_of_circuit(b), tol);
}

}  // namespace qcw::tensor
