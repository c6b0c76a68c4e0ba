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

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "qcw/device/device.hpp"
#include "qcw/qcir/circuit.hpp"
#include "qcw/tableau/tableau.hpp"
#include "qcw/tensor/unitary.hpp"
#include "qcw/zx/diagram.hpp"

namespace qcw::cli {

/**
 * @brief Ordered store of snapshots with one focused entry; ids are never reused.
 */
template <typename T>
class SnapshotManager {
public:
    size_t add(T value) {
        size_t id = _next_id++;
        _entries.emplace(id, std::move(value));
        _focused = id;
        return id;
    }

    bool empty() const { return _entries.empty(); }
    size_t size() const { return _entries.size(); }
    bool has(size_t id) const { return _entries.count(id) > 0; }
    std::optional<size_t> focused_id() const { return _focused; }
    std::map<size_t, T> const& entries() const { return _entries; }

    T& at(size_t id) {
        auto it = _entries.find(id);
        if (it == _entries.end()) throw std::out_of_range(fmt::format("no entry with id {}", id));
        return it->second;
    }
    T const& at(size_t id) const { return const_cast<SnapshotManager*>(this)->at(id); }

    T& focused() {
        if (!_focused) throw std::out_of_range("manager is empty");
        return _entries.at(*_focused);
    }
    T const& focused() const { return const_cast<SnapshotManager*>(this)->focused(); }

    void checkout(size_t id) {
        if (!has(id)) throw std::out_of_range(fmt::format("no entry with id {}", id));
        _focused = id;
    }

    /// Removing the focused entry re-focuses the highest remaining id.
    void remove(size_t id) {
        if (!has(id)) throw std::out_of_range(fmt::format("no entry with id {}", id));
        _entries.erase(id);
        if (_focused && *_focused == id)
            _focused = _entries.empty() ? std::nullopt
                                        : std::optional<size_t>{_entries.rbegin()->first};
    }

    void replace_focused(T value) {
        if (!_focused) {
            add(std::move(value));
            return;
        }
        _entries.at(*_focused) = std::move(value);
    }

private:
    std::map<size_t, T> _entries;
    std::optional<size_t> _focused;
    size_t _next_id = 0;
};

enum class LogLevel { off = 0, error, warn, info, debug, trace };

inline std::optional<LogLevel> parse_log_level(std::string const& name) {
    if (name == "off") return LogLevel::off;
    if (name == "error") return LogLevel::error;
    if (name == "warn") return LogLevel::warn;
    if (name == "info") return LogLevel::info;
    if (name == "debug") return LogLevel::debug;
    if (name == "trace") return LogLevel::trace;
    return std::nullopt;
}

inline std::string log_level_name(LogLevel level) {
    switch (level) {
        case LogLevel::off: return "off";
        case LogLevel::error: return "error";
        case LogLevel::warn: return "warn";
        case LogLevel::info: return "info";
        case LogLevel::debug: return "debug";
        case LogLevel::trace: return "trace";
    }
    return "?";
}

/**
 * @brief The whole workspace: one snapshot manager per representation plus
 * aliases, variables, history, and output streams.
 *
 * Aliases and variables keep insertion order so every traversal is stable.
 */
struct Session {
    SnapshotManager<qcir::QuantumCircuit> circuits;
    SnapshotManager<zx::ZXDiagram> diagrams;
    SnapshotManager<tableau::Tableau> tableaux;
    SnapshotManager<device::Device> devices;
    SnapshotManager<tensor::Unitary> unitaries;

    std::vector<std::pair<std::string, std::string>> aliases;
    std::vector<std::pair<std::string, std::string>> variables;
    std::vector<std::string> history;
    LogLevel log_level = LogLevel::warn;
    bool quit_requested = false;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    std::ostream* out = &std::cout;
    std::ostream* err = &std::cerr;

    /// Installed by the shell; lets composite commands run command lines.
    std::function<int(std::string const&)> run_line;

    std::optional<std::string> alias_of(std::string const& name) const {
        for (auto const& [key, value] : aliases)
            if (key == name) return value;
        return std::nullopt;
    }
    void set_alias(std::string const& name, std::string const& expansion) {
        for (auto& [key, value] : aliases)
            if (key == name) {
                value = expansion;
                return;
            }
        aliases.emplace_back(name, expansion);
    }
    bool unset_alias(std::string const& name) {
        for (auto it = aliases.begin(); it != aliases.end(); ++it)
            if (it->first == name) {
                aliases.erase(it);
                return true;
            }
        return false;
    }

    std::optional<std::string> variable_of(std::string const& name) const {
        for (auto const& [key, value] : variables)
            if (key == name) return value;
        return std::nullopt;
    }
    void set_variable(std::string const& name, std::string const& value) {
        for (auto& [key, stored] : variables)
            if (key == name) {
                stored = value;
                return;
            }
        variables.emplace_back(name, value);
    }
    bool unset_variable(std::string const& name) {
        for (auto it = variables.begin(); it != variables.end(); ++it)
            if (it->first == name) {
                variables.erase(it);
                return true;
            }
        return false;
    }

    void log(LogLevel level, std::string const& message) const {
        if (level == LogLevel::off || level > log_level) return;
        *err << fmt::format("[{}] {}\n", log_level_name(level), message);
    }
};

}  // namespace qcw::cli
