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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcw::gf2 {

/**
 * @brief Dense bit-packed matrix over GF(2).
 *
 * Rows are stored as contiguous 64-bit words so that row XOR (the inner loop
 * of every elimination-based routine) is word-parallel.
 */
class BooleanMatrix {
public:
    BooleanMatrix(size_t n_rows, size_t n_cols)
        : _n_rows{n_rows}, _n_cols{n_cols}, _words{(n_cols + 63) / 64}, _bits(n_rows * _words, 0) {}

    static BooleanMatrix identity(size_t n) {
        BooleanMatrix m{n, n};
        for (size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    /// Builds a matrix from explicit 0/1 rows. All rows must have equal width.
    static BooleanMatrix from_rows(std::vector<std::vector<int>> const& rows) {
        size_t n_cols = rows.empty() ? 0 : rows.front().size();
        BooleanMatrix m{rows.size(), n_cols};
        for (size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != n_cols) throw std::invalid_argument("BooleanMatrix: ragged rows");
            for (size_t c = 0; c < n_cols; ++c) m.set(r, c, rows[r][c] != 0);
        }
        return m;
    }

    size_t num_rows() const { return _n_rows; }
    size_t num_cols() const { return _n_cols; }

    bool get(size_t r, size_t c) const {
        check(r, c);
        return (_bits[r * _words + c / 64] >> (c % 64)) & 1u;
    }

    void set(size_t r, size_t c, bool v) {
        check(r, c);
        uint64_t& w = _bits[r * _words + c / 64];
        uint64_t mask = uint64_t{1} << (c % 64);
        w = v ? (w | mask) : (w & ~mask);
    }

    /// rows[target] ^= rows[source]
    void xor_row(size_t target, size_t source) {
        if (target >= _n_rows || source >= _n_rows)
            throw std::out_of_range("BooleanMatrix: row index out of range");
        uint64_t* t = &_bits[target * _words];
        uint64_t const* s = &_bits[source * _words];
        for (size_t w = 0; w < _words; ++w) t[w] ^= s[w];
    }

    void swap_rows(size_t a, size_t b) {
        if (a >= _n_rows || b >= _n_rows)
            throw std::out_of_range("BooleanMatrix: row index out of range");
        for (size_t w = 0; w < _words; ++w) std::swap(_bits[a * _words + w], _bits[b * _words + w]);
    }

    bool row_is_zero(size_t r) const {
        if (r >= _n_rows) throw std::out_of_range("BooleanMatrix: row index out of range");
        for (size_t w = 0; w < _words; ++w)
            if (_bits[r * _words + w]) return false;
        return true;
    }

    /// Matrix-vector product over GF(2).
    std::vector<bool> multiply(std::vector<bool> const& x) const {
        if (x.size() != _n_cols) throw std::invalid_argument("BooleanMatrix: size mismatch");
        std::vector<bool> y(_n_rows, false);
        for (size_t r = 0; r < _n_rows; ++r) {
            bool acc = false;
            for (size_t c = 0; c < _n_cols; ++c) acc ^= (get(r, c) && x[c]);
            y[r] = acc;
        }
        return y;
    }

    bool operator==(BooleanMatrix const& o) const {
        return _n_rows == o._n_rows && _n_cols == o._n_cols && _bits == o._bits;
    }
    bool operator!=(BooleanMatrix const& o) const { return !(*this == o); }

    std::string to_string() const {
        std::string s;
        for (size_t r = 0; r < _n_rows; ++r) {
            for (size_t c = 0; c < _n_cols; ++c) {
                s += get(r, c) ? '1' : '0';
                if (c + 1 < _n_cols) s += ' ';
            }
            s += '\n';
        }
        return s;
    }

private:
    void check(size_t r, size_t c) const {
        if (r >= _n_rows || c >= _n_cols)
            throw std::out_of_range("BooleanMatrix: index out of range");
    }

    size_t _n_rows, _n_cols, _words;
    std::vector<uint64_t> _bits;
};

/**
 * @brief Chronological record of the row operations done by an elimination.
 *
 * Replaying the trace on the original matrix reproduces the eliminated
 * matrix exactly; callers map row-adds to CNOTs and swaps to wire swaps.
 */
class RowOpTrace {
public:
    struct Event {
        enum class Kind { add, swap };
        Kind kind;
        size_t source;  // for swap: first row
        size_t target;  // for swap: second row
    };

    void record_add(size_t source, size_t target) {
        _events.push_back({Event::Kind::add, source, target});
    }
    void record_swap(size_t a, size_t b) { _events.push_back({Event::Kind::swap, a, b}); }

    std::vector<Event> const& events() const { return _events; }

    std::vector<std::pair<size_t, size_t>> ops() const {
        std::vector<std::pair<size_t, size_t>> v;
        for (auto const& e : _events)
            if (e.kind == Event::Kind::add) v.emplace_back(e.source, e.target);
        return v;
    }
    std::vector<std::pair<size_t, size_t>> swaps() const {
        std::vector<std::pair<size_t, size_t>> v;
        for (auto const& e : _events)
            if (e.kind == Event::Kind::swap) v.emplace_back(e.source, e.target);
        return v;
    }

    size_t size() const { return _events.size(); }

    /// Replays the recorded operations, in order, on m.
    void apply(BooleanMatrix& m) const {
        for (auto const& e : _events) {
            if (e.kind == Event::Kind::add)
                m.xor_row(e.target, e.source);
            else
                m.swap_rows(e.source, e.target);
        }
    }

private:
    std::vector<Event> _events;
};

struct EliminationResult {
    BooleanMatrix matrix;
    RowOpTrace trace;
    std::vector<size_t> pivot_cols;
};

/**
 * @brief Row echelon (or reduced row echelon) form with an operation trace.
 *
 * The pivot for each column is the lowest-index candidate row holding a 1,
 * which makes the routine fully deterministic.
 */
inline EliminationResult gaussian_elimination(BooleanMatrix m, bool full_reduce) {
    RowOpTrace trace;
    std::vector<size_t> pivot_cols;
    size_t r = 0;
    for (size_t c = 0; c < m.num_cols() && r < m.num_rows(); ++c) {
        size_t pivot = m.num_rows();
        for (size_t i = r; i < m.num_rows(); ++i) {
            if (m.get(i, c)) {
                pivot = i;
                break;
            }
        }
        if (pivot == m.num_rows()) continue;
        if (pivot != r) {
            m.swap_rows(r, pivot);
            trace.record_swap(r, pivot);
        }
        size_t lo = full_reduce ? 0 : r + 1;
        for (size_t j = lo; j < m.num_rows(); ++j) {
            if (j != r && m.get(j, c)) {
                m.xor_row(j, r);
                trace.record_add(r, j);
            }
        }
        pivot_cols.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(trace), std::move(pivot_cols)};
}

inline size_t rank(BooleanMatrix const& m) {
    return gaussian_elimination(m, false).pivot_cols.size();
}

/**
 * @brief One solution of A x = b, or nullopt when the system is inconsistent.
 *
 * Free variables are fixed to 0, so the returned solution is deterministic.
 */
inline std::optional<std::vector<bool>> solve(BooleanMatrix const& a, std::vector<bool> const& b) {
    if (b.size() != a.num_rows()) throw std::invalid_argument("solve: size mismatch");
    BooleanMatrix aug{a.num_rows(), a.num_cols() + 1};
    for (size_t r = 0; r < a.num_rows(); ++r) {
        for (size_t c = 0; c < a.num_cols(); ++c) aug.set(r, c, a.get(r, c));
        aug.set(r, a.num_cols(), b[r]);
    }
    auto elim = gaussian_elimination(std::move(aug), true);
    std::vector<bool> x(a.num_cols(), false);
    for (size_t i = 0; i < elim.pivot_cols.size(); ++i) {
        size_t pc = elim.pivot_cols[i];
        if (pc == a.num_cols()) return std::nullopt;  // pivot in the augmented column
        x[pc] = elim.matrix.get(i, a.num_cols());
    }
    return x;
}

/**
 * @brief Deterministic basis of the null space {x : A x = 0}.
 *
 * One basis vector per free column, produced in ascending free-column order.
 */
inline std::vector<std::vector<bool>> kernel_basis(BooleanMatrix const& a) {
    auto elim = gaussian_elimination(a, true);
    std::vector<bool> is_pivot(a.num_cols(), false);
    for (size_t pc : elim.pivot_cols) is_pivot[pc] = true;
    std::vector<std::vector<bool>> basis;
    for (size_t f = 0; f < a.num_cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<bool> v(a.num_cols(), false);
        v[f] = true;
        for (size_t i = 0; i < elim.pivot_cols.size(); ++i)
            v[elim.pivot_cols[i]] = elim.matrix.get(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace qcw::gf2
