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

#include <csignal>
#include <iostream>
#include <string>
#include <vector>

#include "qcw/cli/shell.hpp"

int main(int argc, char** argv) {
    // an interrupt aborts the pending read and drops back to the prompt
    std::signal(SIGINT, [](int) { std::fputc('\n', stderr); });

    if (argc > 1 && (std::string{argv[1]} == "-h" || std::string{argv[1]} == "--help")) {
        std::cout << "Usage: qcw [script [args...]]\n\n"
                  << "Starts the interactive workbench, or runs a command script.\n"
                  << "Scripts may require arguments via a leading //!ARGS banner.\n";
        return 0;
    }

    qcw::cli::Session session;
    qcw::cli::Shell shell{session};
    shell.load_rc();

    if (argc > 1) {
        std::vector<std::string> args{argv + 2, argv + argc};
        return shell.run_script(argv[1], args);
    }
    return shell.run_interactive(std::cin);
}
