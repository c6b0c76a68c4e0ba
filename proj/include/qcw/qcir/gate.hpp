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
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcw/qcir/phase.hpp"
#include "qcw/util/ordered_dict.hpp"

namespace qcw::qcir {

/// Variadic arity marker for multi-controlled kinds.
inline constexpr int kVariadicArity = -1;

/**
 * @brief Static description of a gate kind.
 *
 * Kinds form an open registry keyed by name, so downstream passes reject
 * unknown kinds with a clear error instead of silently mis-translating.
 */
struct GateTypeInfo {
    std::string name;
    int arity = 1;             // kVariadicArity: >= 2 qubits, controls first, target last
    bool has_param = false;    // rotation angle parameter
    bool always_clifford = false;
    bool symmetric = false;    // action invariant under any qubit permutation
    std::string inverse_name;  // inverse kind; parameterized kinds negate the angle instead
    /// Row-major 2^arity x 2^arity matrix for custom kinds; builtins are
    /// handled natively by the numeric backend and leave this empty.
    std::function<std::vector<std::complex<double>>(Phase)> unitary;
};

class GateRegistry {
public:
    static GateRegistry& instance() {
        static GateRegistry reg;
        return reg;
    }

    void register_type(GateTypeInfo info) {
        if (info.name.empty()) throw std::invalid_argument("GateRegistry: empty kind name");
        _types[info.name] = std::move(info);
    }

    GateTypeInfo const* find(std::string const& name) const {
        if (!_types.contains(name)) return nullptr;
        return &_types.at(name);
    }

    GateTypeInfo const& at(std::string const& name) const {
        auto const* info = find(name);
        if (!info) throw std::invalid_argument("GateRegistry: unknown gate kind '" + name + "'");
        return *info;
    }

private:
    GateRegistry() {
        auto add = [this](std::string name, int arity, bool has_param, bool clifford,
                          bool symmetric, std::string inv) {
            register_type({std::move(name), arity, has_param, clifford, symmetric, std::move(inv), {}});
        };
        add("h", 1, false, true, true, "h");
        add("x", 1, false, true, true, "x");
        add("y", 1, false, true, true, "y");
        add("z", 1, false, true, true, "z");
        add("s", 1, false, true, true, "sdg");
        add("sdg", 1, false, true, true, "s");
        add("t", 1, false, false, true, "tdg");
        add("tdg", 1, false, false, true, "t");
        add("sx", 1, false, true, true, "");  // inverse is rx(3pi/2), handled by Gate::inverse
        add("rz", 1, true, false, true, "rz");
        add("rx", 1, true, false, true, "rx");
        add("cx", 2, false, true, false, "cx");
        add("cz", 2, false, true, true, "cz");
        add("swap", 2, false, true, true, "swap");
        add("ccx", 3, false, false, false, "ccx");
        add("ccz", 3, false, false, true, "ccz");
        add("mcx", kVariadicArity, false, false, false, "mcx");
        add("mcz", kVariadicArity, false, false, true, "mcz");
    }

    util::ordered_dict<std::string, GateTypeInfo> _types;
};

/**
 * @brief One gate application: a kind, its qubits, and an optional angle.
 *
 * Multi-controlled kinds list controls first and the target last.
 */
struct Gate {
    std::string kind;
    std::vector<size_t> qubits;
    Phase param;

    GateTypeInfo const& type() const { return GateRegistry::instance().at(kind); }

    bool is_clifford() const {
        auto const& info = type();
        if (info.always_clifford) return true;
        if (info.has_param) return param.is_clifford();
        return false;
    }

    /// Returns the gate whose action inverts this one (up to global phase).
    Gate inverse() const {
        auto const& info = type();
        if (info.has_param) return {kind, qubits, -param};
        if (kind == "sx") return {"rx", qubits, Phase{3, 2}};
        if (info.inverse_name.empty())
            throw std::invalid_argument("Gate: kind '" + kind + "' has no registered inverse");
        return {info.inverse_name, qubits, Phase{}};
    }

    bool operator==(Gate const& o) const {
        return kind == o.kind && qubits == o.qubits && param == o.param;
    }

    /// True when o undoes this gate exactly.
    bool is_inverse_of(Gate const& o) const {
        Gate inv = inverse();
        if (inv.kind != o.kind || inv.param != o.param) return false;
        if (type().symmetric) {
            auto a = inv.qubits, b = o.qubits;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            return a == b;
        }
        return inv.qubits == o.qubits;
    }
};

}  // namespace qcw::qcir
