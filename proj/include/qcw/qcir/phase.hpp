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
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace qcw::qcir {

/**
 * @brief Exact rotation angle: a rational multiple of pi, normalized to [0, 2pi).
 *
 * All angle arithmetic in the library is exact; floating point only appears
 * when a Phase is converted to radians for numeric backends.
 */
class Phase {
public:
    /// value = (num / den) * pi
    constexpr Phase() = default;
    Phase(std::int64_t num, std::int64_t den = 1) : _num{num}, _den{den} { normalize(); }

    std::int64_t numerator() const { return _num; }
    std::int64_t denominator() const { return _den; }

    bool is_zero() const { return _num == 0; }
    /// Multiple of pi (0 or pi).
    bool is_pauli() const { return _den == 1; }
    /// Multiple of pi/2 (0, pi/2, pi, 3pi/2): a Clifford rotation angle.
    bool is_clifford() const { return _den <= 2; }
    /// Odd multiple of pi/4: costs one T gate.
    bool is_t_like() const { return _den == 4; }

    Phase operator+(Phase const& o) const { return Phase{_num * o._den + o._num * _den, _den * o._den}; }
    Phase operator-(Phase const& o) const { return Phase{_num * o._den - o._num * _den, _den * o._den}; }
    Phase operator-() const { return Phase{-_num, _den}; }
    Phase operator*(std::int64_t k) const { return Phase{_num * k, _den}; }
    Phase& operator+=(Phase const& o) { return *this = *this + o; }
    Phase& operator-=(Phase const& o) { return *this = *this - o; }

    bool operator==(Phase const& o) const { return _num == o._num && _den == o._den; }
    bool operator!=(Phase const& o) const { return !(*this == o); }

    double to_radians() const {
        return std::numbers::pi * static_cast<double>(_num) / static_cast<double>(_den);
    }

    /// Renders the exact form used by the QASM writer: "0", "pi", "3*pi/4", ...
    std::string to_string() const {
        if (_num == 0) return "0";
        if (_den == 1) return _num == 1 ? "pi" : fmt::format("{}*pi", _num);
        if (_num == 1) return fmt::format("pi/{}", _den);
        return fmt::format("{}*pi/{}", _num, _den);
    }

private:
    void normalize() {
        if (_den == 0) throw std::invalid_argument("Phase: zero denominator");
        if (_den < 0) {
            _den = -_den;
            _num = -_num;
        }
        std::int64_t g = std::gcd(_num < 0 ? -_num : _num, _den);
        if (g > 1) {
            _num /= g;
            _den /= g;
        }
        std::int64_t period = 2 * _den;
        _num %= period;
        if (_num < 0) _num += period;
    }

    std::int64_t _num = 0;
    std::int64_t _den = 1;
};

}  // namespace qcw::qcir
