/**
 * Copyright 2026 the qcw authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qcw/cli/argparse.hpp"
#include "qcw/cli/session.hpp"
#include "qcw/cli/shell.hpp"

using namespace qcw;

namespace {

struct ShellFixture {
    cli::Session session;
    std::ostringstream out, err;
    cli::Shell shell{session};

    ShellFixture() {
        session.out = &out;
        session.err = &err;
    }

    int run(std::string const& line) { return shell.execute(line); }
    std::string take_out() {
        std::string s = out.str();
        out.str("");
        return s;
    }
    std::string take_err() {
        std::string s = err.str();
        err.str("");
        return s;
    }
};

std::filesystem::path write_temp(std::string const& name, std::string const& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream file{path};
    file << content;
    return path;
}

std::string read_file(std::filesystem::path const& path) {
    std::ifstream in{path};
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::filesystem::path bell_qasm() {
    return write_temp("qcw_cli_bell.qasm",
                      "OPENQASM 2.0;\n"
                      "include \"qelib1.inc\";\n"
                      "qreg q[2];\n"
                      "h q[0];\n"
                      "cx q[0],q[1];\n"
                      "t q[1];\n"
                      "tdg q[0];\n"
                      "cx q[0],q[1];\n");
}

}  // namespace

TEST_CASE("argument parsing validates, defaults, and short-circuits on -h") {
    cli::ArgumentParser parser;
    parser.add_positional("filepath").help("input file");
    parser.add_positional("mode").optional("fast").choices({"fast", "slow"});
    parser.add_flag("-r", "--replace").help("replace");
    parser.add_option("-n", "--count").integer().optional("3");

    auto parsed = parser.parse({"a.qasm", "-r"});
    REQUIRE(parsed.str("filepath") == "a.qasm");
    REQUIRE(parsed.str("mode") == "fast");
    REQUIRE(parsed.flag("replace"));
    REQUIRE(parsed.integer("count") == 3);

    REQUIRE(parser.parse({"x", "-h"}).help_requested);
    REQUIRE(parser.parse({"--help"}).help_requested);

    REQUIRE_THROWS_WITH(parser.parse({}), Catch::Matchers::ContainsSubstring("filepath"));
    REQUIRE_THROWS_WITH(parser.parse({"a", "medium"}),
                        Catch::Matchers::ContainsSubstring("invalid choice 'medium'"));
    REQUIRE_THROWS_WITH(parser.parse({"a", "-z"}),
                        Catch::Matchers::ContainsSubstring("unknown option '-z'"));
    REQUIRE_THROWS_WITH(parser.parse({"a", "--count", "many"}),
                        Catch::Matchers::ContainsSubstring("invalid integer 'many'"));
    REQUIRE_THROWS_WITH(parser.parse({"a", "--count"}),
                        Catch::Matchers::ContainsSubstring("expects a value"));
    REQUIRE_THROWS_WITH(parser.parse({"a", "fast", "extra"}),
                        Catch::Matchers::ContainsSubstring("unexpected argument 'extra'"));
}

TEST_CASE("help output is byte-stable and matches the frozen golden layout") {
    ShellFixture fx;
    REQUIRE(fx.run("qcir read -h") == 0);
    std::string first = fx.take_out();
    REQUIRE(fx.run("qcir read --help") == 0);
    REQUIRE(first == fx.take_out());

    std::string golden = read_file(std::filesystem::path{QCW_SOURCE_DIR} / "tests" / "golden" /
                                   "qcir_read_help.txt");
    REQUIRE(first == golden);

    // structural layout: the four sections in order, and the replace-flag row
    size_t usage = first.find("Usage: qcir read [-h] [-r] <string filepath>");
    size_t description = first.find("\nDescription:\n");
    size_t positionals = first.find("\nPositional Arguments:\n");
    size_t options = first.find("\nOptions:\n");
    REQUIRE(usage == 0);
    REQUIRE(description != std::string::npos);
    REQUIRE(positionals != std::string::npos);
    REQUIRE(options != std::string::npos);
    REQUIRE(description < positionals);
    REQUIRE(positionals < options);
    REQUIRE(first.find("-r, --replace") != std::string::npos);
    REQUIRE(first.find("flag") < first.find("-h, --help"));
}

TEST_CASE("snapshot managers focus the newest entry and never reuse ids") {
    cli::SnapshotManager<int> mgr;
    REQUIRE(mgr.empty());
    REQUIRE(mgr.add(10) == 0);
    REQUIRE(mgr.add(20) == 1);
    REQUIRE(mgr.focused_id() == 1);
    mgr.checkout(0);
    REQUIRE(mgr.focused() == 10);
    mgr.checkout(1);
    mgr.remove(1);  // focused entry: focus falls back to the highest remaining id
    REQUIRE(mgr.focused_id() == 0);
    REQUIRE(mgr.add(30) == 2);  // id 1 is never reused
    mgr.remove(0);              // non-focused entry: focus unchanged
    REQUIRE(mgr.focused_id() == 2);
    mgr.remove(2);
    REQUIRE(mgr.empty());
    REQUIRE_FALSE(mgr.focused_id().has_value());
    REQUIRE_THROWS_AS(mgr.checkout(5), std::out_of_range);
    REQUIRE_THROWS_AS(mgr.remove(0), std::out_of_range);
}

TEST_CASE("lines split on semicolons, strip comments, and respect quotes") {
    ShellFixture fx;
    REQUIRE(fx.run("echo one; echo two // trailing comment; echo three") == 0);
    REQUIRE(fx.take_out() == "one\ntwo\n");

    REQUIRE(fx.run("echo \"a; b // not a comment\"") == 0);
    REQUIRE(fx.take_out() == "a; b // not a comment\n");

    REQUIRE(fx.run("echo \"--- pre-optimization  ---\"") == 0);
    REQUIRE(fx.take_out() == "--- pre-optimization  ---\n");

    REQUIRE(fx.run("// nothing but a comment") == 0);
    REQUIRE(fx.take_out().empty());
    REQUIRE(fx.run("   ") == 0);

    REQUIRE(fx.run("echo 'single quoted; with \" inside'") == 0);
    REQUIRE(fx.take_out() == "single quoted; with \" inside\n");

    REQUIRE(fx.run("echo \"unterminated") == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("unterminated quote"));
}

TEST_CASE("aliases expand at the first token and report their stored text") {
    ShellFixture fx;
    REQUIRE(fx.run("alias greet \"echo hello\"") == 0);
    REQUIRE(fx.run("greet world") == 0);
    REQUIRE(fx.take_out() == "hello world\n");

    REQUIRE(fx.run("alias greet") == 0);
    REQUIRE(fx.take_out() == "alias greet \"echo hello\"\n");

    // the pre-registered short forms resolve to the long commands
    REQUIRE(fx.run("qc new 2") == 0);
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("stored circuit 0"));

    REQUIRE(fx.run("alias -d greet") == 0);
    REQUIRE(fx.run("greet") == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("unknown command 'greet'"));
    REQUIRE(fx.run("alias -d greet") == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("no alias 'greet'"));

    // mutual recursion trips the depth cap instead of hanging
    REQUIRE(fx.run("alias ping pong; alias pong ping") == 0);
    REQUIRE(fx.run("ping") == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("alias expansion exceeds depth 16"));
}

TEST_CASE("variables substitute into lines and undefined names are diagnosed") {
    ShellFixture fx;
    REQUIRE(fx.run("set WHO world") == 0);
    REQUIRE(fx.run("echo hello ${WHO}") == 0);
    REQUIRE(fx.take_out() == "hello world\n");

    REQUIRE(fx.run("set WHO") == 0);
    REQUIRE(fx.take_out() == "set WHO \"world\"\n");

    REQUIRE(fx.run("echo ${MISSING}") == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("undefined variable 'MISSING'"));

    REQUIRE(fx.run("set -d WHO") == 0);
    REQUIRE(fx.run("set -d WHO") == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("no variable 'WHO'"));
}

TEST_CASE("command prefixes resolve when unambiguous and are diagnosed when not") {
    ShellFixture fx;
    REQUIRE(fx.run("qcir new 2") == 0);
    fx.take_out();

    // 'conv' -> convert, 'tabl' is an alias, 'opt' and 'ph' are subcommand prefixes
    REQUIRE(fx.run("conv qc tabl") == 0);
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("stored tableau 0"));
    REQUIRE(fx.run("tabl opt ph todd") == 0);
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("phase-polynomial optimization"));

    REQUIRE(fx.run("q") == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("ambiguous command 'q'"));

    REQUIRE(fx.run("frobnicate") == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("unknown command 'frobnicate'"));

    REQUIRE(fx.run("qcir frobnicate") == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("(under 'qcir')"));

    REQUIRE(fx.run("tabl opt phasepoly annealing") == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("invalid choice 'annealing'"));
}

TEST_CASE("manager commands track focus through new, checkout, and delete") {
    ShellFixture fx;
    REQUIRE(fx.run("qcir new 2; qcir new 3; qcir list") == 0);
    std::string listing = fx.take_out();
    REQUIRE_THAT(listing, Catch::Matchers::ContainsSubstring("    0: 2 qubits"));
    REQUIRE_THAT(listing, Catch::Matchers::ContainsSubstring("*   1: 3 qubits"));

    REQUIRE(fx.run("qcir checkout 0; qcir list") == 0);
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("*   0: 2 qubits"));

    REQUIRE(fx.run("qcir checkout 1; qcir delete; qcir list") == 0);
    listing = fx.take_out();
    REQUIRE_THAT(listing, Catch::Matchers::ContainsSubstring("deleted circuit 1"));
    REQUIRE_THAT(listing, Catch::Matchers::ContainsSubstring("*   0: 2 qubits"));

    REQUIRE(fx.run("qcir checkout 7") == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("no circuit with id 7"));

    REQUIRE(fx.run("qcir delete; qcir delete") == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("no circuits to delete"));
}

TEST_CASE("reading circuits honors the replace flag and rejects bad input") {
    ShellFixture fx;
    auto bell = bell_qasm();
    REQUIRE(fx.run(fmt::format("qcir read {}", bell.string())) == 0);
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("stored circuit 0: 2 qubits, 5 gates"));

    REQUIRE(fx.run(fmt::format("qcir read -r {}", bell.string())) == 0);
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("replaced circuit 0"));

    REQUIRE(fx.run("qcir read /nonexistent/nope.qasm") == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("cannot open"));

    REQUIRE(fx.run("qcir read circuit.qc") == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("unsupported extension"));

    auto bad = write_temp("qcw_cli_bad.qasm", "OPENQASM 2.0;\nqreg q[1];\nwarp q[0];\n");
    REQUIRE(fx.run(fmt::format("qcir read {}", bad.string())) == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("error"));
}

TEST_CASE("conversion pipelines round-trip and equivalence reports fidelity") {
    ShellFixture fx;
    auto bell = bell_qasm();
    REQUIRE(fx.run(fmt::format("qcir read {}", bell.string())) == 0);
    REQUIRE(fx.run("qc2zx; zx optimize --full; zx2qc") == 0);
    REQUIRE(fx.run("qc equiv 0 1 --tensor") == 0);
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("equivalent (fidelity = 1.000000000)"));

    REQUIRE(fx.run("qc2tabl; tabl opt full; tabl2qc") == 0);
    REQUIRE(fx.run("qc equiv 0") == 0);  // second id defaults to the focused circuit
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("equivalent"));

    // X and Z on one qubit are inequivalent, and the status code says so
    auto x_path = write_temp("qcw_cli_x.qasm", "OPENQASM 2.0;\nqreg q[1];\nx q[0];\n");
    auto z_path = write_temp("qcw_cli_z.qasm", "OPENQASM 2.0;\nqreg q[1];\nz q[0];\n");
    REQUIRE(fx.run(fmt::format("qcir read {}; qcir read {}", x_path.string(), z_path.string())) == 0);
    fx.take_out();
    REQUIRE(fx.run("qcir list") == 0);
    std::string listing = fx.take_out();
    REQUIRE(fx.run("qc equiv 3 4") == 1);
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("not equivalent"));

    REQUIRE(fx.run("convert tabl zx") == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("unsupported conversion"));

    ShellFixture empty;
    REQUIRE(empty.run("convert tabl qc") == 1);
    REQUIRE_THAT(empty.take_err(), Catch::Matchers::ContainsSubstring("no tableaus"));
}

TEST_CASE("unitary conversions store tensors that compare correctly") {
    ShellFixture fx;
    auto bell = bell_qasm();
    REQUIRE(fx.run(fmt::format("qcir read {}", bell.string())) == 0);
    REQUIRE(fx.run("qc2ts") == 0);
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("stored unitary 0: 4x4 matrix"));
    REQUIRE(fx.run("qc2zx; zx2ts") == 0);
    REQUIRE(fx.run("tensor equiv 0 1") == 0);
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("equivalent"));
    REQUIRE(fx.run("tensor print") == 0);
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("4x4 matrix"));
}

TEST_CASE("scripts bind banner arguments, reject wrong arity, and abort on failure") {
    ShellFixture fx;
    auto bell = bell_qasm();
    auto script = write_temp("qcw_cli_script.qcw",
                             "//!ARGS INPUT\n"
                             "qcir read ${INPUT}\n"
                             "echo loaded ${INPUT}\n");
    REQUIRE(fx.shell.run_script(script, {bell.string()}) == 0);
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("loaded"));

    REQUIRE(fx.shell.run_script(script, {}) == 1);
    std::string message = fx.take_err();
    REQUIRE_THAT(message, Catch::Matchers::ContainsSubstring("INPUT"));
    REQUIRE_THAT(message, Catch::Matchers::ContainsSubstring("expects 1 argument"));

    REQUIRE(fx.shell.run_script(script, {"a", "b"}) == 1);

    auto comments = write_temp("qcw_cli_comments.qcw", "// only comments\n\n// here\n");
    REQUIRE(fx.shell.run_script(comments, {}) == 0);

    auto failing = write_temp("qcw_cli_failing.qcw",
                              "echo before\n"
                              "qcir frobnicate\n"
                              "echo after\n");
    REQUIRE(fx.shell.run_script(failing, {}) == 1);
    std::string output = fx.take_out();
    REQUIRE_THAT(output, Catch::Matchers::ContainsSubstring("before"));
    REQUIRE_THAT(output, !Catch::Matchers::ContainsSubstring("after"));

    REQUIRE(fx.shell.run_script("/nonexistent/script.qcw", {}) == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("cannot open script"));
}

TEST_CASE("history records lines in order and exported history replays the session") {
    ShellFixture fx;
    REQUIRE(fx.run("alias hi \"echo hi\"") == 0);
    REQUIRE(fx.run("set GREETING hello") == 0);
    REQUIRE(fx.run("qcir new 4") == 0);
    fx.take_out();
    REQUIRE(fx.run("history") == 0);
    std::string shown = fx.take_out();
    REQUIRE_THAT(shown, Catch::Matchers::ContainsSubstring("1  alias hi \"echo hi\""));
    REQUIRE_THAT(shown, Catch::Matchers::ContainsSubstring("2  set GREETING hello"));
    REQUIRE_THAT(shown, Catch::Matchers::ContainsSubstring("3  qcir new 4"));
    REQUIRE_THAT(shown, Catch::Matchers::ContainsSubstring("4  history"));

    auto exported = std::filesystem::temp_directory_path() / "qcw_cli_history.qcw";
    REQUIRE(fx.run(fmt::format("history {}", exported.string())) == 0);
    REQUIRE(read_file(exported).rfind("alias hi \"echo hi\"\nset GREETING hello\nqcir new 4\n", 0) == 0);

    // replaying the export in a fresh session reproduces aliases, variables, and circuits
    ShellFixture replay;
    REQUIRE(replay.shell.run_script(exported, {}) == 0);
    REQUIRE(replay.session.alias_of("hi") == "echo hi");
    REQUIRE(replay.session.variable_of("GREETING") == "hello");
    REQUIRE(replay.session.circuits.size() == 1);
    REQUIRE(replay.session.circuits.focused().n_qubits() == 4);
}

TEST_CASE("log levels gate pass diagnostics") {
    ShellFixture fx;
    REQUIRE(fx.run("qcir new 2") == 0);
    REQUIRE(fx.run("qcir optimize") == 0);
    REQUIRE(fx.take_err().empty());  // warn level hides debug output

    REQUIRE(fx.run("logger debug; qcir optimize") == 0);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("[debug]"));

    REQUIRE(fx.run("logger off; qcir optimize") == 0);
    REQUIRE(fx.take_err().empty());

    REQUIRE(fx.run("logger") == 0);
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("log level: off"));

    REQUIRE(fx.run("logger verbose") == 1);
    REQUIRE_THAT(fx.take_err(), Catch::Matchers::ContainsSubstring("invalid choice 'verbose'"));
}

TEST_CASE("usage reports elapsed time and memory") {
    ShellFixture fx;
    REQUIRE(fx.run("usage") == 0);
    std::string report = fx.take_out();
    REQUIRE_THAT(report, Catch::Matchers::ContainsSubstring("time  :"));
    REQUIRE_THAT(report, Catch::Matchers::ContainsSubstring("memory:"));
}

TEST_CASE("the startup config is executed when present") {
    auto rc = write_temp("qcw_cli_rc", "alias mygreet \"echo from-rc\"\nset RCVAR 42\n");
    setenv("QCW_RC", rc.string().c_str(), 1);
    cli::Session session;
    std::ostringstream out, err;
    session.out = &out;
    session.err = &err;
    cli::Shell shell{session};
    shell.load_rc();
    unsetenv("QCW_RC");
    REQUIRE(session.alias_of("mygreet") == "echo from-rc");
    REQUIRE(session.variable_of("RCVAR") == "42");
    REQUIRE(session.history.empty());  // startup lines are not user history
}

TEST_CASE("group commands print their manual and quit stops the shell") {
    ShellFixture fx;
    REQUIRE(fx.run("qcir") == 0);
    std::string manual = fx.take_out();
    REQUIRE_THAT(manual, Catch::Matchers::ContainsSubstring("Usage: qcir"));
    REQUIRE_THAT(manual, Catch::Matchers::ContainsSubstring("Subcommands:"));
    REQUIRE_THAT(manual, Catch::Matchers::ContainsSubstring("read"));

    REQUIRE(fx.run("help qcir read") == 0);
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("Usage: qcir read"));

    REQUIRE(fx.run("help") == 0);
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("route"));

    std::istringstream input{"echo alive\nquit\necho dead\n"};
    REQUIRE(fx.shell.run_interactive(input) == 0);
    std::string output = fx.take_out();
    REQUIRE_THAT(output, Catch::Matchers::ContainsSubstring("alive"));
    REQUIRE_THAT(output, !Catch::Matchers::ContainsSubstring("dead"));
}

TEST_CASE("routing command maps the focused circuit onto the focused device") {
    ShellFixture fx;
    auto qasm = write_temp("qcw_cli_route.qasm",
                           "OPENQASM 2.0;\nqreg q[3];\nh q[0];\ncx q[0],q[2];\n");
    auto dev = write_temp("qcw_cli_line3.dev", "device-v1 line3 3\n0 1\n1 2\n");
    REQUIRE(fx.run(fmt::format("qcir read {}", qasm.string())) == 0);
    REQUIRE(fx.run(fmt::format("device read {}", dev.string())) == 0);
    REQUIRE(fx.run("route --objective swaps") == 0);
    REQUIRE_THAT(fx.take_out(), Catch::Matchers::ContainsSubstring("1 swaps"));
    REQUIRE(fx.run("route --objective depth --scheduler search") == 0);
    fx.take_out();

    REQUIRE(fx.run("device heavy-hex 6; device print") == 0);
    std::string printed = fx.take_out();
    REQUIRE_THAT(printed, Catch::Matchers::ContainsSubstring("heavy-hex-6"));
    REQUIRE_THAT(printed, Catch::Matchers::ContainsSubstring("edges:"));

    ShellFixture empty;
    REQUIRE(empty.run("route") == 1);
    REQUIRE_THAT(empty.take_err(), Catch::Matchers::ContainsSubstring("no circuits"));
}
