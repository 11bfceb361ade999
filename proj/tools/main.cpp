#include <iostream>

#include "psap/cli.hpp"

int main(int argc, char** argv) {
    return psap::cli::run(argc, argv, std::cout, std::cerr);
}
