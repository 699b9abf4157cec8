#include <iostream>

#include "cilb/cli.hpp"

int main(int argc, char** argv) {
    return cilb::cli::run(argc, argv, std::cout, std::cerr);
}
