#include <iostream>
#include <string>
#include <vector>

#include "azdual/cli/app.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return azd::cli::run(args, std::cout, std::cerr);
}
