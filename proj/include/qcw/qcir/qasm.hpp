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

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "qcw/qcir/circuit.hpp"

namespace qcw::qcir {

class QasmParseError : public std::runtime_error {
public:
    QasmParseError(size_t line, std::string const& what)
        : std::runtime_error{fmt::format("qasm parse error at line {}: {}", line, what)} {}
};

namespace detail {

/// Parses an exact rational angle: "0", "pi", "-pi/4", "3*pi/4", "2*pi".
inline Phase parse_phase_expr(std::string const& raw, size_t line) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw QasmParseError{line, "empty angle expression"};
    if (s.find('.') != std::string::npos)
        throw QasmParseError{line, fmt::format("angle '{}' is not an exact rational multiple of pi", raw)};

    size_t i = 0;
    std::int64_t sign = 1;
    if (s[i] == '-') {
        sign = -1;
        ++i;
    } else if (s[i] == '+') {
        ++i;
    }

    auto read_int = [&](char const* what) {
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) throw QasmParseError{line, fmt::format("expected {} in angle '{}'", what, raw)};
        return static_cast<std::int64_t>(std::stoll(s.substr(start, i - start)));
    };

    std::int64_t num = 1;
    bool saw_pi = false;
    if (s.compare(i, 2, "pi") == 0) {
        saw_pi = true;
        i += 2;
    } else {
        num = read_int("integer");
        if (i < s.size() && s[i] == '*') {
            ++i;
            if (s.compare(i, 2, "pi") != 0)
                throw QasmParseError{line, fmt::format("expected 'pi' in angle '{}'", raw)};
            saw_pi = true;
            i += 2;
        } else if (s.compare(i, 2, "pi") == 0) {  // "3pi/4" shorthand
            saw_pi = true;
            i += 2;
        }
    }

    std::int64_t den = 1;
    if (i < s.size() && s[i] == '/') {
        ++i;
        den = read_int("denominator");
        if (den == 0) throw QasmParseError{line, "zero denominator in angle"};
    }
    if (i != s.size()) throw QasmParseError{line, fmt::format("trailing input in angle '{}'", raw)};
    if (!saw_pi && num != 0)
        throw QasmParseError{line, fmt::format("angle '{}' is not an exact rational multiple of pi", raw)};
    return Phase{sign * num, den};
}

}  // namespace detail

/**
 * @brief Parses the supported OpenQASM 2.0 subset.
 *
 * One qreg; creg/measure/barrier statements are skipped with a warning.
 * Angles must be exact rational multiples of pi.
 */
inline QuantumCircuit parse_qasm(std::string const& text, std::vector<std::string>* warnings = nullptr) {
    static const std::vector<std::string> kTokens = {"h",  "x",  "y",    "z",   "s",   "sdg",
                                                     "t",  "tdg", "sx",  "rz",  "rx",  "cx",
                                                     "cz", "swap", "ccx", "ccz", "u1"};
    auto warn = [&](std::string msg) {
        if (warnings) warnings->push_back(std::move(msg));
    };

    // Split into ';'-terminated statements, remembering each statement's line.
    struct Stmt {
        std::string text;
        size_t line;
    };
    std::vector<Stmt> stmts;
    {
        std::string cur;
        size_t line = 1, stmt_line = 1;
        for (size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '/' && i + 1 < text.size() && text[i + 1] == '/') {
                while (i < text.size() && text[i] != '\n') ++i;
                --i;
                continue;
            }
            if (text[i] == '\n') ++line;
            if (text[i] == ';') {
                stmts.push_back({cur, stmt_line});
                cur.clear();
                stmt_line = line;
            } else {
                if (cur.empty() && std::isspace(static_cast<unsigned char>(text[i]))) {
                    stmt_line = line;
                    continue;
                }
                cur += text[i];
            }
        }
        std::string rest;
        for (char c : cur)
            if (!std::isspace(static_cast<unsigned char>(c))) rest += c;
        if (!rest.empty()) throw QasmParseError{stmt_line, "missing ';' after statement"};
    }

    std::string reg_name;
    size_t n_qubits = 0;
    bool have_qreg = false;
    QuantumCircuit circuit{0};

    for (auto const& [stmt, line] : stmts) {
        // Tokenize: identifiers/numbers, and the punctuation [ ] ( ) ,
        std::vector<std::string> toks;
        for (size_t i = 0; i < stmt.size();) {
            char c = stmt[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
            } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
                size_t j = i;
                while (j < stmt.size() && (std::isalnum(static_cast<unsigned char>(stmt[j])) ||
                                           stmt[j] == '_' || stmt[j] == '.'))
                    ++j;
                toks.push_back(stmt.substr(i, j - i));
                i = j;
            } else {
                toks.push_back(std::string(1, c));
                ++i;
            }
        }
        if (toks.empty()) continue;
        std::string const& head = toks[0];

        if (head == "OPENQASM") {
            if (toks.size() < 2 || toks[1] != "2.0") throw QasmParseError{line, "only OPENQASM 2.0 is supported"};
            continue;
        }
        if (head == "include") continue;
        if (head == "creg") {
            warn(fmt::format("line {}: classical register ignored", line));
            continue;
        }
        if (head == "measure") {
            warn(fmt::format("line {}: measurement ignored", line));
            continue;
        }
        if (head == "barrier" || head == "reset") {
            warn(fmt::format("line {}: '{}' ignored", line, head));
            continue;
        }
        if (head == "qreg") {
            if (have_qreg) throw QasmParseError{line, "only one qreg is supported"};
            if (toks.size() != 5 || toks[2] != "[" || toks[4] != "]")
                throw QasmParseError{line, "malformed qreg declaration"};
            reg_name = toks[1];
            n_qubits = std::stoull(toks[3]);
            circuit = QuantumCircuit{n_qubits};
            have_qreg = true;
            continue;
        }

        // Gate statement.
        if (std::find(kTokens.begin(), kTokens.end(), head) == kTokens.end())
            throw QasmParseError{line, fmt::format("unsupported gate '{}'", head)};
        if (!have_qreg) throw QasmParseError{line, "gate before qreg declaration"};

        size_t i = 1;
        Phase param;
        std::string kind = head == "u1" ? "rz" : head;
        bool takes_param = kind == "rz" || kind == "rx";
        if (i < toks.size() && toks[i] == "(") {
            if (!takes_param) throw QasmParseError{line, fmt::format("gate '{}' takes no angle", head)};
            std::string expr;
            ++i;
            int depth = 1;
            while (i < toks.size() && depth > 0) {
                if (toks[i] == "(") ++depth;
                if (toks[i] == ")") {
                    --depth;
                    if (depth == 0) break;
                }
                expr += toks[i];
                ++i;
            }
            if (i >= toks.size()) throw QasmParseError{line, "unterminated '(' in gate statement"};
            ++i;  // consume ')'
            param = detail::parse_phase_expr(expr, line);
        } else if (takes_param) {
            throw QasmParseError{line, fmt::format("gate '{}' needs an angle", head)};
        }

        std::vector<size_t> qubits;
        while (i < toks.size()) {
            if (toks[i] == ",") {
                ++i;
                continue;
            }
            if (toks[i] != reg_name)
                throw QasmParseError{line, fmt::format("unknown register '{}'", toks[i])};
            if (i + 3 >= toks.size() || toks[i + 1] != "[" || toks[i + 3] != "]")
                throw QasmParseError{line, "malformed qubit reference"};
            size_t idx = std::stoull(toks[i + 2]);
            if (idx >= n_qubits)
                throw QasmParseError{line, fmt::format("qubit index {} out of range", idx)};
            qubits.push_back(idx);
            i += 4;
        }
        try {
            circuit.add_gate(kind, std::move(qubits), param);
        } catch (std::exception const& e) {
            throw QasmParseError{line, e.what()};
        }
    }
    if (!have_qreg) throw QasmParseError{1, "no qreg declaration found"};
    return circuit;
}

/// Emits the circuit as OpenQASM 2.0 with exact rational angles.
inline std::string write_qasm(QuantumCircuit const& c) {
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out += fmt::format("qreg q[{}];\n", c.n_qubits());
    for (auto const& g : c.gates()) {
        if (g.kind == "mcx" || g.kind == "mcz")
            throw std::invalid_argument(
                fmt::format("write_qasm: kind '{}' has no OpenQASM 2.0 form; decompose it first", g.kind));
        out += g.kind;
        if (g.type().has_param) out += "(" + g.param.to_string() + ")";
        out += " ";
        for (size_t i = 0; i < g.qubits.size(); ++i) {
            if (i) out += ",";
            out += fmt::format("q[{}]", g.qubits[i]);
        }
        out += ";\n";
    }
    return out;
}

}  // namespace qcw::qcir
