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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <vector>

#if __has_include(<unistd.h>)
#include <unistd.h>
#define QCW_HAS_ISATTY 1
#endif

#include "qcw/cli/commands.hpp"

namespace qcw::cli {

namespace detail {

inline std::string trim(std::string const& text) {
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    size_t last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

/// Removes a trailing `//` comment, respecting single and double quotes.
inline std::string strip_comment(std::string const& line) {
    bool in_single = false, in_double = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (c == '\'' && !in_double) in_single = !in_single;
        else if (c == '"' && !in_single) in_double = !in_double;
        else if (c == '/' && !in_single && !in_double && i + 1 < line.size() && line[i + 1] == '/')
            return line.substr(0, i);
    }
    return line;
}

/// Splits on unquoted `;`.
inline std::vector<std::string> split_segments(std::string const& line) {
    std::vector<std::string> segments;
    std::string current;
    bool in_single = false, in_double = false;
    for (char c : line) {
        if (c == '\'' && !in_double) in_single = !in_single;
        else if (c == '"' && !in_single) in_double = !in_double;
        if (c == ';' && !in_single && !in_double) {
            segments.push_back(current);
            current.clear();
            continue;
        }
        current += c;
    }
    segments.push_back(current);
    return segments;
}

/// Whitespace tokenization with shell-style quoting (quotes removed, content kept).
inline std::vector<Token> tokenize(std::string const& text) {
    std::vector<Token> tokens;
    std::string current;
    bool in_single = false, in_double = false, quoted = false;
    auto flush = [&] {
        if (!current.empty() || quoted) tokens.push_back({current, quoted});
        current.clear();
        quoted = false;
    };
    for (char c : text) {
        if (c == '\'' && !in_double) {
            in_single = !in_single;
            quoted = true;
            continue;
        }
        if (c == '"' && !in_single) {
            in_double = !in_double;
            quoted = true;
            continue;
        }
        if ((c == ' ' || c == '\t') && !in_single && !in_double) {
            flush();
            continue;
        }
        current += c;
    }
    if (in_single || in_double) throw parse_error("unterminated quote");
    flush();
    return tokens;
}

}  // namespace detail

/**
 * @brief Drives the command tree: line parsing, alias/variable expansion,
 * scripts, the startup config, and the interactive loop.
 *
 * Every input line yields either executed commands or a one-line diagnostic;
 * user input never aborts the shell.
 */
class Shell {
public:
    static constexpr size_t kAliasDepthCap = 16;

    explicit Shell(Session& session) : _session{session}, _commands{build_commands()} {
        install_default_aliases(session);
        add_help_command();
        session.run_line = [this](std::string const& line) { return execute(line, false); };
    }

    Shell(Shell const&) = delete;
    Shell& operator=(Shell const&) = delete;

    CommandMap const& commands() const { return _commands; }

    /// Runs one input line: comments, history, `;` chaining, diagnostics.
    int execute(std::string const& line, bool record = true) {
        std::string body = detail::strip_comment(line);
        if (detail::trim(body).empty()) return 0;
        if (record) _session.history.push_back(line);
        for (auto const& segment : detail::split_segments(body)) {
            if (detail::trim(segment).empty()) continue;
            int status = execute_segment(segment);
            if (status != 0) return status;
            if (_session.quit_requested) break;
        }
        return 0;
    }

    /**
     * Runs a script file. A leading `//!ARGS NAME...` banner names required
     * arguments; the caller must pass exactly that many, bound as variables.
     * Execution aborts on the first failing line.
     */
    int run_script(std::filesystem::path const& path, std::vector<std::string> const& args) {
        std::ifstream in{path};
        if (!in) {
            *_session.err << fmt::format("error: cannot open script '{}'\n", path.string());
            return 1;
        }
        std::vector<std::string> lines;
        for (std::string line; std::getline(in, line);) lines.push_back(line);

        std::vector<std::string> required;
        for (auto const& line : lines) {
            std::string trimmed = detail::trim(line);
            if (trimmed.empty()) continue;
            if (trimmed.rfind("//!ARGS", 0) == 0) {
                std::istringstream names{trimmed.substr(7)};
                for (std::string name; names >> name;) required.push_back(name);
            }
            break;  // the banner, when present, is the first non-empty line
        }
        if (args.size() != required.size()) {
            *_session.err << fmt::format(
                "error: script '{}' expects {} argument(s){}{}; got {}\n", path.string(),
                required.size(), required.empty() ? "" : ": ",
                fmt::format("{}", fmt::join(required, ", ")), args.size());
            return 1;
        }
        for (size_t i = 0; i < required.size(); ++i) _session.set_variable(required[i], args[i]);

        for (auto const& line : lines) {
            int status = execute(line);
            if (status != 0) return status;
            if (_session.quit_requested) break;
        }
        return 0;
    }

    /// Executes the startup config if present; errors are reported but non-fatal.
    void load_rc() {
        std::filesystem::path rc;
        if (char const* env = std::getenv("QCW_RC"); env != nullptr && *env != '\0') {
            rc = env;
        } else if (char const* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
            rc = std::filesystem::path{home} / ".config" / "qcw" / "qcwrc";
        }
        if (rc.empty() || !std::filesystem::exists(rc)) return;
        std::ifstream in{rc};
        for (std::string line; std::getline(in, line);) execute(line, false);
    }

    /// Reads lines until EOF or `quit`; a prompt is shown only on a terminal.
    int run_interactive(std::istream& in) {
        bool show_prompt = false;
#ifdef QCW_HAS_ISATTY
        show_prompt = (&in == &std::cin) && isatty(fileno(stdin)) != 0;
#endif
        while (!_session.quit_requested) {
            if (show_prompt) *_session.out << "qcw> " << std::flush;
            std::string line;
            if (!std::getline(in, line)) break;
            execute(line);
        }
        return 0;
    }

    /// Full manual for one command node.
    std::string help_text(Command const& cmd, std::string const& path) const {
        std::vector<std::pair<std::string, std::string>> subs;
        for (auto const& [name, sub] : cmd.sub) subs.emplace_back(name, sub.description);
        return cmd.parser.render_help(path, cmd.description, subs);
    }

private:
    /// `${NAME}` substitution; undefined names are diagnostics, not silence.
    std::string substitute_variables(std::string const& text) const {
        std::string out;
        for (size_t i = 0; i < text.size();) {
            if (text[i] == '$' && i + 1 < text.size() && text[i + 1] == '{') {
                size_t close = text.find('}', i + 2);
                if (close == std::string::npos) throw parse_error("unterminated '${'");
                std::string name = text.substr(i + 2, close - i - 2);
                auto value = _session.variable_of(name);
                if (!value) throw parse_error(fmt::format("undefined variable '{}'", name));
                out += *value;
                i = close + 1;
                continue;
            }
            out += text[i++];
        }
        return out;
    }

    /// First-token alias expansion with a cycle guard; quoted tokens never expand.
    std::vector<Token> expand_aliases(std::vector<Token> tokens) const {
        for (size_t depth = 0; depth < kAliasDepthCap; ++depth) {
            if (tokens.empty() || tokens.front().quoted) return tokens;
            auto expansion = _session.alias_of(tokens.front().text);
            if (!expansion) return tokens;
            auto expanded = detail::tokenize(substitute_variables(*expansion));
            expanded.insert(expanded.end(), tokens.begin() + 1, tokens.end());
            tokens = std::move(expanded);
        }
        if (!tokens.empty() && _session.alias_of(tokens.front().text))
            throw parse_error(fmt::format("alias expansion exceeds depth {}", kAliasDepthCap));
        return tokens;
    }

    struct Resolution {
        Command const* command;
        std::string path;
        std::vector<Token> args;
    };

    /// Walks the tree as long as tokens name subcommands; the rest are arguments.
    Resolution resolve(std::vector<Token> const& tokens) const {
        Command const* cmd = &resolve_token(_commands, tokens.front().text, "");
        std::string path = cmd->name;
        size_t consumed = 1;
        while (!cmd->sub.empty() && consumed < tokens.size() &&
               tokens[consumed].text.rfind('-', 0) != 0) {
            cmd = &resolve_token(cmd->sub, tokens[consumed].text,
                                 fmt::format(" (under '{}')", path));
            path += " " + cmd->name;
            ++consumed;
        }
        return {cmd, path, {tokens.begin() + static_cast<ptrdiff_t>(consumed), tokens.end()}};
    }

    int execute_segment(std::string const& segment) {
        try {
            auto tokens = detail::tokenize(substitute_variables(segment));
            if (tokens.empty()) return 0;
            tokens = expand_aliases(tokens);
            if (tokens.empty()) return 0;
            auto [cmd, path, args] = resolve(tokens);
            auto parsed = cmd->parser.parse(args);
            if (parsed.help_requested || !cmd->action) {
                *_session.out << help_text(*cmd, path);
                return 0;
            }
            return cmd->action(parsed, _session);
        } catch (parse_error const& e) {
            *_session.err << fmt::format("error: {}\n", e.what());
            return 1;
        } catch (std::exception const& e) {
            *_session.err << fmt::format("error: {}\n", e.what());
            return 1;
        }
    }

    void add_help_command() {
        Command help;
        help.name = "help";
        help.description = "list all commands, or show the manual of one command";
        help.parser.add_positional("command").variadic().help(
            "command path to describe (e.g. 'qcir read')");
        help.action = [this](ParsedArgs const& args, Session& s) {
            auto const& words = args.rest("command");
            if (words.empty()) {
                size_t width = 0;
                for (auto const& [name, cmd] : _commands) width = std::max(width, name.size());
                for (auto const& [name, cmd] : _commands)
                    *s.out << fmt::format("  {:<{}}  {}\n", name, width, cmd.description);
                return 0;
            }
            std::vector<Token> tokens;
            tokens.reserve(words.size());
            for (auto const& w : words) tokens.push_back({w, false});
            auto resolution = resolve(tokens);
            if (!resolution.args.empty())
                throw parse_error(
                    fmt::format("unknown command '{}' (under '{}')", resolution.args.front().text,
                                resolution.path));
            *s.out << help_text(*resolution.command, resolution.path);
            return 0;
        };
        _commands.emplace("help", std::move(help));
    }

    Session& _session;
    CommandMap _commands;
};

}  // namespace qcw::cli
