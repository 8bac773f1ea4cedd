#include <iostream>
#include <string>
#include <vector>

#include "vfx/cli.hpp"

int main(int argc, char** argv) {
    return vfx::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
