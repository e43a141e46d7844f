#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    const auto result = weilkit::cli::run(args);
    if (!result.wrote_file) std::cout << result.output;
    return result.exit_code;
}
