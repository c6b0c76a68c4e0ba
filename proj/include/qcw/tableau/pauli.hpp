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

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "qcw/qcir/phase.hpp"

namespace qcw::tableau {

/**
 * @brief A Pauli operator on up to 64 qubits with exact phase tracking.
 *
 * Canonical form: i^phase * prod_q X_q^{x_q} Z_q^{z_q}, factors ordered by
 * qubit, X before Z within a qubit. Y_q is (x=1, z=1) with one extra factor
 * of i. Products, commutation, and Clifford-gate conjugation are all exact.
 */
class PauliString {
public:
    explicit PauliString(size_t n) : _n{n} {
        if (n > 64) throw std::invalid_argument("PauliString: more than 64 qubits");
    }

    static PauliString identity(size_t n) { return PauliString{n}; }
    static PauliString make_x(size_t n, size_t q) {
        PauliString p{n};
        p._x = bit(q, n);
        return p;
    }
    static PauliString make_z(size_t n, size_t q) {
        PauliString p{n};
        p._z = bit(q, n);
        return p;
    }
    static PauliString make_y(size_t n, size_t q) {
        PauliString p{n};
        p._x = p._z = bit(q, n);
        p._phase = 1;  // Y = i * X * Z
        return p;
    }
    static PauliString make_diagonal(size_t n, uint64_t z_mask) {
        PauliString p{n};
        if (n < 64 && (z_mask >> n) != 0)
            throw std::out_of_range("PauliString: mask bit out of range");
        p._z = z_mask;
        return p;
    }

    size_t num_qubits() const { return _n; }
    uint64_t x_bits() const { return _x; }
    uint64_t z_bits() const { return _z; }
    unsigned i_power() const { return _phase; }
    bool x_bit(size_t q) const { return (_x >> q) & 1u; }
    bool z_bit(size_t q) const { return (_z >> q) & 1u; }
    bool is_identity_op() const { return _x == 0 && _z == 0; }
    bool is_diagonal() const { return _x == 0; }

    void add_i_power(unsigned k) { _phase = (_phase + k) & 3u; }
    PauliString& times_i() {
        add_i_power(1);
        return *this;
    }
    PauliString& negate() {
        add_i_power(2);
        return *this;
    }

    /// Power of i multiplying the plain {I,X,Y,Z} tensor.
    unsigned sign_exponent() const {
        return (_phase + 4u - (static_cast<unsigned>(std::popcount(_x & _z)) & 3u)) & 3u;
    }
    bool is_hermitian() const { return (sign_exponent() & 1u) == 0; }
    int sign() const {
        unsigned e = sign_exponent();
        if (e & 1u) throw std::logic_error("PauliString: sign of a non-hermitian operator");
        return e == 0 ? 1 : -1;
    }
    void set_sign(int s) {
        _phase = ((s < 0 ? 2u : 0u) + (static_cast<unsigned>(std::popcount(_x & _z)) & 3u)) & 3u;
    }

    bool commutes_with(PauliString const& o) const {
        return ((std::popcount(_x & o._z) + std::popcount(_z & o._x)) & 1) == 0;
    }

    /// Bit equality ignoring the phase factor.
    bool equal_bits(PauliString const& o) const { return _x == o._x && _z == o._z; }
    bool operator==(PauliString const& o) const {
        return _n == o._n && _x == o._x && _z == o._z && _phase == o._phase;
    }
    bool operator!=(PauliString const& o) const { return !(*this == o); }

    PauliString operator*(PauliString const& o) const {
        if (_n != o._n) throw std::invalid_argument("PauliString: size mismatch");
        PauliString r{_n};
        r._x = _x ^ o._x;
        r._z = _z ^ o._z;
        // commuting Z^z past X^x costs (-1)^{|z & x|}
        r._phase = (_phase + o._phase + 2u * (static_cast<unsigned>(std::popcount(_z & o._x)) & 1u)) & 3u;
        return r;
    }

    /// Conjugates in place by the named Clifford gate: P -> U P U^dag.
    void apply_gate(std::string const& kind, std::vector<size_t> const& qubits) {
        if (kind == "h") return conj_h(qubits.at(0));
        if (kind == "s") return conj_s(qubits.at(0));
        if (kind == "sdg") return conj_sdg(qubits.at(0));
        if (kind == "x") return conj_flip(z_bit(qubits.at(0)));
        if (kind == "y") return conj_flip(x_bit(qubits.at(0)) ^ z_bit(qubits.at(0)));
        if (kind == "z") return conj_flip(x_bit(qubits.at(0)));
        if (kind == "sx") {
            conj_h(qubits.at(0));
            conj_s(qubits.at(0));
            conj_h(qubits.at(0));
            return;
        }
        if (kind == "sxdg") {
            conj_h(qubits.at(0));
            conj_sdg(qubits.at(0));
            conj_h(qubits.at(0));
            return;
        }
        if (kind == "cx") return conj_cx(qubits.at(0), qubits.at(1));
        if (kind == "cz") {
            conj_h(qubits.at(1));
            conj_cx(qubits.at(0), qubits.at(1));
            conj_h(qubits.at(1));
            return;
        }
        if (kind == "swap") {
            size_t a = qubits.at(0), b = qubits.at(1);
            bool xa = x_bit(a), xb = x_bit(b), za = z_bit(a), zb = z_bit(b);
            set_x(a, xb);
            set_x(b, xa);
            set_z(a, zb);
            set_z(b, za);
            return;
        }
        throw std::invalid_argument(fmt::format("PauliString: '{}' is not a Clifford gate kind", kind));
    }

    std::string to_string() const {
        static char const* prefix[4] = {"+", "i", "-", "-i"};
        std::string out = prefix[sign_exponent()];
        for (size_t q = 0; q < _n; ++q) {
            bool x = x_bit(q), z = z_bit(q);
            out += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
        }
        return out;
    }

private:
    static uint64_t bit(size_t q, size_t n) {
        if (q >= n) throw std::out_of_range("PauliString: qubit index out of range");
        return uint64_t{1} << q;
    }
    void set_x(size_t q, bool v) { _x = (_x & ~bit(q, _n)) | (v ? bit(q, _n) : 0); }
    void set_z(size_t q, bool v) { _z = (_z & ~bit(q, _n)) | (v ? bit(q, _n) : 0); }

    // rules act on the {I,X,Y,Z} view; re-anchoring keeps i^phase consistent
    void conj_flip(bool flip) {
        if (flip) add_i_power(2);
    }
    void conj_h(size_t q) {
        unsigned e = sign_exponent();
        bool x = x_bit(q), z = z_bit(q);
        if (x && z) e = (e + 2u) & 3u;
        set_x(q, z);
        set_z(q, x);
        reanchor(e);
    }
    void conj_s(size_t q) {
        unsigned e = sign_exponent();
        bool x = x_bit(q), z = z_bit(q);
        if (x && z) e = (e + 2u) & 3u;
        set_z(q, z ^ x);
        reanchor(e);
    }
    void conj_sdg(size_t q) {
        unsigned e = sign_exponent();
        bool x = x_bit(q), z = z_bit(q);
        set_z(q, z ^ x);
        if (x && z_bit(q)) e = (e + 2u) & 3u;
        reanchor(e);
    }
    void conj_cx(size_t c, size_t t) {
        unsigned e = sign_exponent();
        bool xc = x_bit(c), zc = z_bit(c), xt = x_bit(t), zt = z_bit(t);
        if (xc && zt && !(xt ^ zc)) e = (e + 2u) & 3u;
        set_x(t, xt ^ xc);
        set_z(c, zc ^ zt);
        reanchor(e);
    }
    void reanchor(unsigned e) {
        _phase = (e + (static_cast<unsigned>(std::popcount(_x & _z)) & 3u)) & 3u;
    }

    size_t _n;
    uint64_t _x = 0, _z = 0;
    unsigned _phase = 0;
};

/**
 * @brief The rotation exp(-i*angle/2 * P) for a hermitian Pauli P.
 *
 * A negative Pauli sign is folded into the angle on construction, so the
 * stored Pauli always has sign +1 and the angle lives in [0, 2pi).
 */
class PauliRotation {
public:
    PauliRotation(PauliString pauli, qcir::Phase angle) : _pauli{std::move(pauli)}, _angle{angle} {
        if (!_pauli.is_hermitian())
            throw std::invalid_argument("PauliRotation: Pauli operator must be hermitian");
        if (_pauli.sign() < 0) {
            _pauli.negate();
            _angle = -_angle;
        }
    }

    PauliString const& pauli() const { return _pauli; }
    qcir::Phase angle() const { return _angle; }

    bool is_zero_angle() const { return _angle.is_zero(); }
    bool is_clifford() const { return _angle.is_clifford(); }
    bool is_diagonal() const { return _pauli.is_diagonal(); }
    bool is_t_like() const { return _angle.denominator() == 4; }

    /// For Clifford angles: the multiple of pi/2 in {0,1,2,3}.
    int quarter_turns() const {
        if (!_angle.is_clifford())
            throw std::logic_error("PauliRotation: quarter turns of a non-Clifford angle");
        auto num = _angle.numerator();
        return static_cast<int>((_angle.denominator() == 2 ? num : 2 * num) & 3);
    }

    std::string to_string() const {
        return fmt::format("{} @ {}", _pauli.to_string(), _angle.to_string());
    }

private:
    PauliString _pauli;
    qcir::Phase _angle;
};

/**
 * @brief Conjugates Q by the Clifford rotation V = exp(-i*(k*pi/2)/2 * P).
 *
 * Returns V Q V^dag: Q itself when [P,Q] = 0; -Q for a half turn; -+i P Q
 * for quarter turns. Inputs hermitian, output hermitian.
 */
inline PauliString conj_by_rotation(PauliString q, PauliString const& p, int k) {
    k &= 3;
    if (k == 0 || q.commutes_with(p)) return q;
    if (k == 2) return q.negate();
    PauliString r = p * q;
    r.add_i_power(k == 1 ? 3u : 1u);  // k=1: -i P Q, k=3: +i P Q
    return r;
}

}  // namespace qcw::tableau
