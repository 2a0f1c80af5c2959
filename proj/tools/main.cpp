#include <iostream>

#include "phasemet/cli.hpp"

int main(int argc, char** argv) {
    return phasemet::cli::run(argc, argv, std::cout, std::cerr);
}
