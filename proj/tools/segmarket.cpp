#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "segmarket/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    segmarket::cli::Options opts;
    opts.color = isatty(STDOUT_FILENO) && std::getenv("SEGMARKET_NO_COLOR") == nullptr;
    return segmarket::cli::run(args, std::cout, std::cerr, opts);
}
