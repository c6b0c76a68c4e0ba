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
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

namespace qcw::cli {

class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A shell word; quoted tokens never match options or flags.
struct Token {
    std::string text;
    bool quoted = false;

    Token(std::string text, bool quoted = false) : text(std::move(text)), quoted(quoted) {}
    Token(char const* text) : text(text) {}
};

enum class ValueKind { string_v, integer_v, real_v, flag_v };

inline std::string type_word(ValueKind k) {
    switch (k) {
        case ValueKind::string_v: return "string";
        case ValueKind::integer_v: return "int";
        case ValueKind::real_v: return "real";
        case ValueKind::flag_v: return "flag";
    }
    return "?";
}

/**
 * @brief One positional or option declaration; setters chain for declaration-site brevity.
 */
struct ArgumentSpec {
    std::string name;        // positional name, or canonical key for options
    std::string short_flag;  // "-r" or empty
    std::string long_flag;   // "--replace" or empty
    ValueKind kind = ValueKind::string_v;
    std::string help_text;
    std::vector<std::string> choice_list;
    std::optional<std::string> default_value;
    bool is_required = true;
    bool is_variadic = false;

    bool is_positional() const { return short_flag.empty() && long_flag.empty(); }

    ArgumentSpec& help(std::string text) {
        help_text = std::move(text);
        return *this;
    }
    ArgumentSpec& integer() {
        kind = ValueKind::integer_v;
        return *this;
    }
    ArgumentSpec& real() {
        kind = ValueKind::real_v;
        return *this;
    }
    ArgumentSpec& choices(std::vector<std::string> values) {
        choice_list = std::move(values);
        return *this;
    }
    ArgumentSpec& optional(std::string default_val) {
        default_value = std::move(default_val);
        is_required = false;
        return *this;
    }
    ArgumentSpec& optional() {
        is_required = false;
        return *this;
    }
    /// Consumes every remaining token (positionals only).
    ArgumentSpec& variadic() {
        is_variadic = true;
        is_required = false;
        return *this;
    }

    /// "filepath" for positionals, "-r, --replace" for options.
    std::string display_name() const {
        if (is_positional()) return name;
        if (!short_flag.empty() && !long_flag.empty()) return short_flag + ", " + long_flag;
        return short_flag.empty() ? long_flag : short_flag;
    }
};

/**
 * @brief Values produced by a successful parse, keyed by argument name.
 */
class ParsedArgs {
public:
    bool has(std::string const& key) const { return _values.count(key) > 0; }
    std::string const& str(std::string const& key) const {
        auto it = _values.find(key);
        if (it == _values.end()) throw std::out_of_range(fmt::format("no argument '{}'", key));
        return it->second;
    }
    int64_t integer(std::string const& key) const {
        return std::stoll(str(key));
    }
    double real(std::string const& key) const { return std::stod(str(key)); }
    bool flag(std::string const& key) const { return has(key) && str(key) == "1"; }
    std::vector<std::string> const& rest(std::string const& key) const {
        static const std::vector<std::string> kEmpty;
        auto it = _variadic.find(key);
        return it == _variadic.end() ? kEmpty : it->second;
    }

    void set(std::string key, std::string value) { _values[std::move(key)] = std::move(value); }
    void append(std::string const& key, std::string value) {
        _variadic[key].push_back(std::move(value));
    }
    bool help_requested = false;

private:
    std::map<std::string, std::string> _values;
    std::map<std::string, std::vector<std::string>> _variadic;
};

/**
 * @brief Declarative parser for one command: positionals, options, auto `-h`.
 *
 * Help output follows a fixed four-section layout (Usage, Description,
 * Positional Arguments, Options) and is byte-stable for a fixed command.
 */
class ArgumentParser {
public:
    ArgumentParser() {
        ArgumentSpec help_flag;
        help_flag.name = "help";
        help_flag.short_flag = "-h";
        help_flag.long_flag = "--help";
        help_flag.kind = ValueKind::flag_v;
        help_flag.help_text = "show this help message";
        help_flag.is_required = false;
        _options.push_back(std::move(help_flag));
    }

    ArgumentSpec& add_positional(std::string name) {
        ArgumentSpec spec;
        spec.name = std::move(name);
        _positionals.push_back(std::move(spec));
        return _positionals.back();
    }

    ArgumentSpec& add_flag(std::string short_flag, std::string long_flag) {
        ArgumentSpec& spec = add_option(short_flag, std::move(long_flag));
        spec.kind = ValueKind::flag_v;
        return spec;
    }

    ArgumentSpec& add_option(std::string short_flag, std::string long_flag) {
        ArgumentSpec spec;
        spec.short_flag = std::move(short_flag);
        spec.long_flag = std::move(long_flag);
        spec.name = !spec.long_flag.empty() ? spec.long_flag.substr(2) : spec.short_flag.substr(1);
        spec.is_required = false;
        _options.push_back(std::move(spec));
        return _options.back();
    }

    std::vector<ArgumentSpec> const& positionals() const { return _positionals; }
    std::vector<ArgumentSpec> const& options() const { return _options; }

    /// Parses tokens; `-h`/`--help` anywhere short-circuits with help_requested set.
    ParsedArgs parse(std::vector<Token> const& tokens) const {
        ParsedArgs out;
        size_t next_positional = 0;
        for (size_t i = 0; i < tokens.size(); ++i) {
            std::string const& tok = tokens[i].text;
            bool option_like = !tokens[i].quoted && tok.size() > 1 && tok[0] == '-' &&
                               !std::isdigit(static_cast<unsigned char>(tok[1]));
            if (option_like && (tok == "-h" || tok == "--help")) {
                out.help_requested = true;
                return out;
            }
            if (option_like) {
                auto const* spec = find_option(tok);
                if (spec == nullptr) throw parse_error(fmt::format("unknown option '{}'", tok));
                if (spec->kind == ValueKind::flag_v) {
                    out.set(spec->name, "1");
                    continue;
                }
                if (i + 1 >= tokens.size())
                    throw parse_error(fmt::format("option '{}' expects a value", tok));
                out.set(spec->name, check_value(*spec, tokens[++i].text));
                continue;
            }
            if (next_positional < _positionals.size()) {
                auto const& spec = _positionals[next_positional];
                if (spec.is_variadic) {
                    out.append(spec.name, tok);
                    continue;  // variadic slot keeps consuming
                }
                out.set(spec.name, check_value(spec, tok));
                ++next_positional;
                continue;
            }
            throw parse_error(fmt::format("unexpected argument '{}'", tok));
        }
        for (size_t i = next_positional; i < _positionals.size(); ++i) {
            auto const& spec = _positionals[i];
            if (spec.is_variadic) continue;
            if (spec.is_required)
                throw parse_error(fmt::format("missing required argument '{}'", spec.name));
            if (spec.default_value) out.set(spec.name, *spec.default_value);
        }
        for (auto const& spec : _options)
            if (!out.has(spec.name) && spec.default_value) out.set(spec.name, *spec.default_value);
        return out;
    }

    /// One-line usage synopsis: options first, then positionals, then subcommand slot.
    std::string usage(std::string const& command_path, bool has_subcommands) const {
        std::string line = "Usage: " + command_path;
        for (auto const& spec : _options) {
            std::string form = spec.short_flag.empty() ? spec.long_flag : spec.short_flag;
            if (spec.kind == ValueKind::flag_v)
                line += fmt::format(" [{}]", form);
            else
                line += fmt::format(" [{} <{}>]", form, type_word(spec.kind));
        }
        for (auto const& spec : _positionals) {
            if (spec.is_variadic)
                line += fmt::format(" [{}...]", spec.name);
            else if (spec.is_required)
                line += fmt::format(" <{} {}>", type_word(spec.kind), spec.name);
            else
                line += fmt::format(" [{} {}]", type_word(spec.kind), spec.name);
        }
        if (has_subcommands) line += " <subcommand> [...]";
        return line;
    }

    /**
     * Four-section manual. Sections appear in a fixed order; positional and
     * option rows carry a leading type word and wrap their help text in an
     * aligned column, so output is byte-identical across runs.
     */
    std::string render_help(std::string const& command_path, std::string const& description,
                            std::vector<std::pair<std::string, std::string>> const& subcommands = {}) const {
        std::ostringstream out;
        out << usage(command_path, !subcommands.empty()) << "\n";
        out << "\nDescription:\n";
        for (auto const& line : wrap_text(description, 66)) out << "  " << line << "\n";
        if (!_positionals.empty()) {
            out << "\nPositional Arguments:\n";
            std::vector<std::array<std::string, 3>> rows;
            for (auto const& spec : _positionals)
                rows.push_back({type_word(spec.kind), spec.name, annotated_help(spec)});
            render_rows(out, rows);
        }
        out << "\nOptions:\n";
        {
            std::vector<std::array<std::string, 3>> rows;
            for (auto const& spec : _options)
                rows.push_back({type_word(spec.kind), spec.display_name(), annotated_help(spec)});
            render_rows(out, rows);
        }
        if (!subcommands.empty()) {
            out << "\nSubcommands:\n";
            std::vector<std::array<std::string, 3>> rows;
            for (auto const& [name, desc] : subcommands) rows.push_back({"", name, desc});
            render_rows(out, rows);
        }
        return out.str();
    }

private:
    ArgumentSpec const* find_option(std::string const& token) const {
        for (auto const& spec : _options)
            if (token == spec.short_flag || token == spec.long_flag) return &spec;
        return nullptr;
    }

    static std::string check_value(ArgumentSpec const& spec, std::string const& value) {
        if (!spec.choice_list.empty() &&
            std::find(spec.choice_list.begin(), spec.choice_list.end(), value) == spec.choice_list.end())
            throw parse_error(fmt::format("invalid choice '{}' for '{}' (expected one of: {})", value,
                                          spec.name, fmt::join(spec.choice_list, ", ")));
        if (spec.kind == ValueKind::integer_v) {
            int64_t parsed = 0;
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
            if (ec != std::errc{} || ptr != value.data() + value.size())
                throw parse_error(fmt::format("invalid integer '{}' for '{}'", value, spec.name));
        }
        if (spec.kind == ValueKind::real_v) {
            try {
                size_t used = 0;
                std::stod(value, &used);
                if (used != value.size()) throw std::invalid_argument{""};
            } catch (std::exception const&) {
                throw parse_error(fmt::format("invalid number '{}' for '{}'", value, spec.name));
            }
        }
        return value;
    }

    static std::string annotated_help(ArgumentSpec const& spec) {
        std::string text = spec.help_text;
        if (!spec.choice_list.empty())
            text += fmt::format(" (choices: {})", fmt::join(spec.choice_list, ", "));
        if (spec.default_value && !spec.default_value->empty())
            text += fmt::format(" (default: {})", *spec.default_value);
        return text;
    }

    static std::vector<std::string> wrap_text(std::string const& text, size_t width) {
        std::istringstream words{text};
        std::vector<std::string> lines;
        std::string word, line;
        while (words >> word) {
            if (!line.empty() && line.size() + 1 + word.size() > width) {
                lines.push_back(line);
                line.clear();
            }
            line += (line.empty() ? "" : " ") + word;
        }
        if (!line.empty()) lines.push_back(line);
        if (lines.empty()) lines.push_back("");
        return lines;
    }

    /// Rows of (type, name, help): two-space gutter, per-column padding, wrapped help.
    static void render_rows(std::ostringstream& out, std::vector<std::array<std::string, 3>> const& rows) {
        size_t type_w = 0, name_w = 0;
        for (auto const& row : rows) {
            type_w = std::max(type_w, row[0].size());
            name_w = std::max(name_w, row[1].size());
        }
        for (auto const& row : rows) {
            std::string head = "  ";
            if (type_w > 0) head += fmt::format("{:<{}}  ", row[0], type_w);
            head += fmt::format("{:<{}}    ", row[1], name_w);
            auto lines = wrap_text(row[2], 40);
            out << head << lines[0] << "\n";
            for (size_t i = 1; i < lines.size(); ++i)
                out << std::string(head.size(), ' ') << lines[i] << "\n";
        }
    }

    std::vector<ArgumentSpec> _positionals;
    std::vector<ArgumentSpec> _options;
};

}  // namespace qcw::cli
