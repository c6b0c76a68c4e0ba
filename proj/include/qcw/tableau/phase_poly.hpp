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

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "qcw/gf2/boolean_matrix.hpp"
#include "qcw/tableau/clifford.hpp"
#include "qcw/tableau/tableau.hpp"

namespace qcw::tableau {

/**
 * @brief A diagonal phase function sum_j c_j * parity(mask_j & x), c_j in
 * units of pi/4 mod 8.
 *
 * Equivalent to a group of mutually commuting Z-axis Pauli rotations; the
 * column masks are the rotation supports (phase gadgets).
 */
class PhasePolynomial {
public:
    explicit PhasePolynomial(size_t n) : _n{n} {}

    size_t num_qubits() const { return _n; }
    size_t num_terms() const { return _masks.size(); }
    std::vector<uint64_t> const& masks() const { return _masks; }
    std::vector<int> const& coeffs() const { return _coeffs; }

    void add_term(uint64_t mask, int coeff) {
        coeff = mod8(coeff);
        if (mask == 0 || coeff == 0) return;  // constant terms are global phase
        _masks.push_back(mask);
        _coeffs.push_back(coeff);
    }

    /// nullopt when a rotation is non-diagonal or not a multiple of pi/4.
    static std::optional<PhasePolynomial> from_group(RotationGroup const& group, size_t n) {
        PhasePolynomial poly{n};
        for (auto const& r : group) {
            if (!r.is_diagonal()) return std::nullopt;
            auto angle = r.angle();
            if (4 % angle.denominator() != 0) return std::nullopt;
            poly.add_term(r.pauli().z_bits(),
                          static_cast<int>(angle.numerator() * (4 / angle.denominator())));
        }
        poly.canonicalize();
        return poly;
    }

    RotationGroup to_group() const {
        RotationGroup group;
        for (size_t j = 0; j < _masks.size(); ++j)
            group.emplace_back(PauliString::make_diagonal(_n, _masks[j]), qcir::Phase{_coeffs[j], 4});
        return group;
    }

    /// Merges duplicate masks mod 8 and drops vanished terms, in mask order.
    void canonicalize() {
        std::map<uint64_t, int> acc;
        for (size_t j = 0; j < _masks.size(); ++j) acc[_masks[j]] = mod8(acc[_masks[j]] + _coeffs[j]);
        _masks.clear();
        _coeffs.clear();
        for (auto const& [mask, coeff] : acc) {
            if (mask == 0 || coeff == 0) continue;
            _masks.push_back(mask);
            _coeffs.push_back(coeff);
        }
    }

    void drop_even_terms() {
        size_t keep = 0;
        for (size_t j = 0; j < _masks.size(); ++j) {
            if (_coeffs[j] % 2 == 0) continue;
            _masks[keep] = _masks[j];
            _coeffs[keep] = _coeffs[j];
            ++keep;
        }
        _masks.resize(keep);
        _coeffs.resize(keep);
    }

    /// Columns are gadget supports, rows are qubits.
    gf2::BooleanMatrix gadget_matrix() const {
        gf2::BooleanMatrix m{_n, _masks.size()};
        for (size_t j = 0; j < _masks.size(); ++j)
            for (size_t q = 0; q < _n; ++q)
                if ((_masks[j] >> q) & 1u) m.set(q, j, true);
        return m;
    }

    static int mod8(int v) { return ((v % 8) + 8) % 8; }

private:
    size_t _n;
    std::vector<uint64_t> _masks;
    std::vector<int> _coeffs;
};

/**
 * @brief Moves every even (Clifford) coefficient of poly into cliff, leaving
 * only odd pi/4 terms.
 *
 * The pair acts as poly o cliff (cliff first); an even term exp(-i*c*pi/8 * Z_S)
 * commutes with the rest of the diagonal and left-composes onto cliff.
 */
inline void properize(CliffordTableau& cliff, PhasePolynomial& poly) {
    poly.canonicalize();
    PhasePolynomial odd{poly.num_qubits()};
    for (size_t j = 0; j < poly.num_terms(); ++j) {
        int c = poly.coeffs()[j];
        if (c % 2 != 0) {
            odd.add_term(poly.masks()[j], c);
            continue;
        }
        cliff.left_compose_rotation(PauliString::make_diagonal(poly.num_qubits(), poly.masks()[j]),
                                    (c / 2) & 3);
    }
    poly = std::move(odd);
}

/**
 * @brief Mod-2 residues of the cubic multilinear expansion of the phase
 * function: triples a <= b <= c covered by an odd number of terms.
 *
 * Degenerate triples carry the linear (a==b==c) and quadratic (a==b<c)
 * residues. Two polynomials implement the same unitary up to a diagonal
 * Clifford iff their signatures match; requires all-odd coefficients.
 */
inline std::set<std::array<size_t, 3>> signature(PhasePolynomial const& poly) {
    for (int c : poly.coeffs())
        if (c % 2 == 0) throw std::invalid_argument("signature: polynomial has even terms");
    std::set<std::array<size_t, 3>> sig;
    size_t n = poly.num_qubits();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a; b < n; ++b)
            for (size_t c = b; c < n; ++c) {
                uint64_t need = (uint64_t{1} << a) | (uint64_t{1} << b) | (uint64_t{1} << c);
                size_t count = 0;
                for (uint64_t mask : poly.masks())
                    if ((mask & need) == need) ++count;
                if (count % 2 != 0) sig.insert({a, b, c});
            }
    return sig;
}

/**
 * @brief One third-order duplicate-destroying step.
 *
 * Searches kernel vectors v of the row-pair AND matrix; a v with
 * v[a] != v[b] lets column b fold into column a (two odd terms cancel),
 * at the cost of one appended column when |v| is odd. Returns a strictly
 * smaller polynomial, or the input unchanged when no pair fires.
 */
inline PhasePolynomial todd_once(PhasePolynomial const& poly) {
    size_t m = poly.num_terms();
    size_t n = poly.num_qubits();
    if (m < 2) return poly;

    // rows: AND of every qubit pair (p <= q) across columns
    gf2::BooleanMatrix pairs{n * (n + 1) / 2, m};
    {
        size_t row = 0;
        for (size_t p = 0; p < n; ++p)
            for (size_t q = p; q < n; ++q, ++row)
                for (size_t j = 0; j < m; ++j) {
                    bool bp = (poly.masks()[j] >> p) & 1u;
                    bool bq = (poly.masks()[j] >> q) & 1u;
                    if (bp && bq) pairs.set(row, j, true);
                }
    }
    auto kernel = gf2::kernel_basis(pairs);
    if (kernel.empty()) return poly;

    // Columns a, b admit a separating kernel vector iff their per-basis
    // membership profiles differ (v -> v[a]^v[b] is linear), and any
    // separating vector merges the pair: two odd coefficients cancel while
    // at most one column is appended. Scan profiles instead of vectors.
    size_t words = (kernel.size() + 63) / 64;
    std::vector<uint64_t> profile(m * words, 0);
    for (size_t i = 0; i < kernel.size(); ++i)
        for (size_t j = 0; j < m; ++j)
            if (kernel[i][j]) profile[j * words + i / 64] |= uint64_t{1} << (i % 64);
    auto same_profile = [&](size_t a, size_t b) {
        for (size_t w = 0; w < words; ++w)
            if (profile[a * words + w] != profile[b * words + w]) return false;
        return true;
    };

    for (size_t a = 0; a < m; ++a) {
        for (size_t b = a + 1; b < m; ++b) {
            if (same_profile(a, b)) continue;
            for (auto const& v : kernel) {
                if (!(v[a] ^ v[b])) continue;
                uint64_t z = poly.masks()[a] ^ poly.masks()[b];
                PhasePolynomial next{n};
                size_t weight = 0;
                for (size_t j = 0; j < m; ++j) {
                    uint64_t mask = poly.masks()[j];
                    if (v[j]) {
                        mask ^= z;
                        ++weight;
                    }
                    next.add_term(mask, poly.coeffs()[j]);
                }
                if (weight % 2 != 0) next.add_term(z, 1);
                next.canonicalize();
                next.drop_even_terms();  // Clifford residue, restored by correction
                if (next.num_terms() < m) return next;
            }
        }
    }
    return poly;
}

/**
 * @brief Appends the diagonal Clifford that maps `after` back to `before`
 * onto cliff (as S powers and CZ), from the multilinear residues.
 *
 * Throws when the two polynomials are not Clifford-equivalent.
 */
inline void apply_clifford_correction(CliffordTableau& cliff, PhasePolynomial const& before,
                                      PhasePolynomial const& after) {
    size_t n = before.num_qubits();
    auto covered_sum = [](PhasePolynomial const& poly, uint64_t need) {
        int total = 0;
        for (size_t j = 0; j < poly.num_terms(); ++j)
            if ((poly.masks()[j] & need) == need) total += poly.coeffs()[j];
        return total;
    };
    auto md = [](int v, int m) { return ((v % m) + m) % m; };

    for (size_t p = 0; p < n; ++p) {
        uint64_t bp = uint64_t{1} << p;
        int dl = md(covered_sum(before, bp) - covered_sum(after, bp), 8);
        if (dl % 2 != 0)
            throw std::logic_error("clifford correction: linear residue mismatch");
        switch (dl / 2) {
            case 1: cliff.apply_gate("s", {p}); break;
            case 2: cliff.apply_gate("z", {p}); break;
            case 3: cliff.apply_gate("sdg", {p}); break;
            default: break;
        }
    }
    for (size_t p = 0; p < n; ++p)
        for (size_t q = p + 1; q < n; ++q) {
            uint64_t need = (uint64_t{1} << p) | (uint64_t{1} << q);
            int dq = md(covered_sum(before, need) - covered_sum(after, need), 4);
            if (dq % 2 != 0)
                throw std::logic_error("clifford correction: quadratic residue mismatch");
            if (dq == 2) cliff.apply_gate("cz", {p, q});
        }
    for (size_t p = 0; p < n; ++p)
        for (size_t q = p + 1; q < n; ++q)
            for (size_t r = q + 1; r < n; ++r) {
                uint64_t need = (uint64_t{1} << p) | (uint64_t{1} << q) | (uint64_t{1} << r);
                if (md(covered_sum(before, need) - covered_sum(after, need), 2) != 0)
                    throw std::logic_error("clifford correction: cubic residue mismatch");
            }
}

/**
 * @brief Full third-order reduction of a (Clifford, polynomial) pair.
 *
 * Properizes, shrinks the gadget set to a fixpoint, then restores the
 * Clifford part dropped along the way. The unitary poly o cliff is exactly
 * preserved up to global phase.
 */
inline void todd(CliffordTableau& cliff, PhasePolynomial& poly) {
    properize(cliff, poly);
    PhasePolynomial before = poly;
    while (true) {
        auto next = todd_once(poly);
        if (next.num_terms() >= poly.num_terms()) break;
        poly = std::move(next);
    }
    apply_clifford_correction(cliff, before, poly);
}

/// Runs todd on every convertible rotation group of a tableau.
inline void todd_pass(Tableau& t) {
    for (size_t ei = 0; ei < t.elements().size(); ++ei) {
        auto const* grp = std::get_if<RotationGroup>(&t.elements()[ei]);
        if (!grp) continue;
        auto maybe = PhasePolynomial::from_group(*grp, t.num_qubits());
        if (!maybe) continue;
        if (ei == 0 || !std::holds_alternative<CliffordTableau>(t.elements()[ei - 1])) {
            // elements()[ei] shifts right; pointers into the vector go stale
            t.elements().insert(t.elements().begin() + ei, CliffordTableau{t.num_qubits()});
            ++ei;
        }
        auto& cliff = std::get<CliffordTableau>(t.elements()[ei - 1]);
        auto poly = *maybe;
        todd(cliff, poly);
        t.elements()[ei] = poly.to_group();
    }
}

}  // namespace qcw::tableau
