#include <iostream>
#include <string>
#include <vector>

#include "unamb/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const auto outcome = unamb::cli::run(args);
    auto& stream = outcome.exit_code >= unamb::cli::kExitUsage ? std::cerr : std::cout;
    stream << outcome.report;
    return outcome.exit_code;
}
